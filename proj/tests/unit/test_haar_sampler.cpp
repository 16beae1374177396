#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>
#include <gtest/gtest.h>

#include "eurlab/error.hpp"
#include "eurlab/haar_sampler.hpp"
#include "eurlab/parallel.hpp"
#include "eurlab/rng.hpp"
#include "oracles.hpp"

using namespace eurlab;

namespace {

double two_sample_ks(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

double max_modulus(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  StreamEngine a(RngStream{1, {2, 3}});
  StreamEngine b(RngStream{1, {2, 3}});
  StreamEngine c(RngStream{1, {2, 4}});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs |= x != c();
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(RngStream({5, {1}}).child(2), (RngStream{5, {1, 2}}));
}

TEST(Rng, UniformAndGaussianMoments) {
  StreamEngine e(RngStream{99, {}});
  double su = 0.0, sg = 0.0, sg2 = 0.0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = e.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double g = e.gaussian();
    sg += g;
    sg2 += g * g;
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sg / n, 0.0, 0.01);
  EXPECT_NEAR(sg2 / n, 1.0, 0.01);
}

TEST(Rng, RandomSubsetIsSortedAndDistinct) {
  StreamEngine e(RngStream{3, {}});
  for (int t = 0; t < 50; ++t) {
    const auto s = random_subset(e, 10, 4);
    ASSERT_EQ(s.size(), 4u);
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
    EXPECT_EQ(std::adjacent_find(s.begin(), s.end()), s.end());
    EXPECT_LT(s.back(), 10u);
  }
}

TEST(Ginibre, DeterministicGivenStream) {
  const RngStream s{42, {1, 2}};
  EXPECT_EQ(sample_ginibre(s, 2, 2), sample_ginibre(s, 2, 2));
  EXPECT_THROW(sample_ginibre(s, 0, 2), InvalidInput);
}

TEST(Ginibre, UnitMeanSquareAndExponentialLaw) {
  constexpr int n = 100000;
  std::vector<double> sq(n);
  for (int i = 0; i < n; ++i) {
    sq[i] = std::norm(sample_ginibre(RngStream{7, {static_cast<std::uint64_t>(i)}}, 1, 1)(0, 0));
  }
  double mean = 0.0;
  for (double x : sq) mean += x;
  EXPECT_NEAR(mean / n, 1.0, 0.02);
  std::sort(sq.begin(), sq.end());
  // Empirical CDF of Exp(1) at its 0.5 and 0.9 quantiles.
  for (double q : {0.5, 0.9}) {
    const double x = -std::log(1.0 - q);
    const double cdf = static_cast<double>(std::upper_bound(sq.begin(), sq.end(), x) - sq.begin()) / n;
    EXPECT_NEAR(cdf, q, 0.02);
  }
}

TEST(Haar, OneByOneIsAPhase) {
  const auto u = sample_haar_unitary(RngStream{1, {}}, 1);
  EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-10);
  EXPECT_THROW(sample_haar_unitary(RngStream{1, {}}, 0), InvalidInput);
}

TEST(Haar, UnitaryAndDeterministic) {
  for (std::size_t n : {2u, 7u, 33u, 128u}) {
    const RngStream s{5, {n}};
    const auto u = sample_haar_unitary(s, n);
    EXPECT_LE(unitarity_defect(u), 1e-8) << n;
    EXPECT_EQ(u, sample_haar_unitary(s, n));
  }
}

TEST(Haar, SameAcrossWorkerCounts) {
  constexpr std::size_t count = 16;
  std::vector<ComplexMatrix> one(count, ComplexMatrix::identity(1));
  std::vector<ComplexMatrix> four(count, ComplexMatrix::identity(1));
  parallel_for(count, 1, [&](std::size_t i) { one[i] = sample_haar_unitary(RngStream{8, {i}}, 12); });
  parallel_for(count, 4, [&](std::size_t i) { four[i] = sample_haar_unitary(RngStream{8, {i}}, 12); });
  for (std::size_t i = 0; i < count; ++i) EXPECT_EQ(one[i], four[i]);
}

TEST(Haar, FirstEntryMeanSquare) {
  constexpr int trials = 10000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    sum += std::norm(sample_haar_unitary(RngStream{21, {static_cast<std::uint64_t>(t)}}, 4)(0, 0));
  }
  EXPECT_NEAR(sum / trials, 0.25, 0.01);
}

TEST(Haar, OrderedColumnWeightsAtThree) {
  constexpr int trials = 10000;
  double mean[3] = {0, 0, 0};
  for (int t = 0; t < trials; ++t) {
    const auto u = sample_haar_unitary(RngStream{22, {static_cast<std::uint64_t>(t)}}, 3);
    double w[3];
    for (int i = 0; i < 3; ++i) w[i] = std::norm(u(i, 0));
    std::sort(w, w + 3, std::greater<>());
    for (int i = 0; i < 3; ++i) mean[i] += w[i] / trials;
  }
  EXPECT_NEAR(mean[0], 11.0 / 18, 0.01);
  EXPECT_NEAR(mean[1], 5.0 / 18, 0.01);
  EXPECT_NEAR(mean[2], 2.0 / 18, 0.01);
}

TEST(Haar, OrderedColumnWeightsMatchHarmonicMeans) {
  // E q_m (m-th largest) = (H_N - H_{m-1}) / N, within three standard errors.
  constexpr std::size_t dim = 6;
  constexpr int trials = 20000;
  std::vector<double> sum(dim, 0.0), sum_sq(dim, 0.0);
  for (int t = 0; t < trials; ++t) {
    const auto u = sample_haar_unitary(RngStream{24, {static_cast<std::uint64_t>(t)}}, dim);
    std::vector<double> w(dim);
    for (std::size_t i = 0; i < dim; ++i) w[i] = std::norm(u(i, 2));
    std::sort(w.begin(), w.end(), std::greater<>());
    for (std::size_t i = 0; i < dim; ++i) {
      sum[i] += w[i];
      sum_sq[i] += w[i] * w[i];
    }
  }
  double harmonic[dim + 1] = {0.0};
  for (std::size_t j = 1; j <= dim; ++j) harmonic[j] = harmonic[j - 1] + 1.0 / j;
  for (std::size_t m = 1; m <= dim; ++m) {
    const double mean = sum[m - 1] / trials;
    const double var = sum_sq[m - 1] / trials - mean * mean;
    const double se = std::sqrt(var / trials);
    EXPECT_NEAR(mean, (harmonic[dim] - harmonic[m - 1]) / dim, 3 * se) << "m=" << m;
  }
}

TEST(Haar, MaxModulusLawInvariantUnderPermutations) {
  constexpr int trials = 10000;
  constexpr std::size_t dim = 5;
  Eigen::PermutationMatrix<Eigen::Dynamic> p(dim), q(dim);
  p.indices() << 4, 2, 0, 3, 1;
  q.indices() << 1, 0, 3, 4, 2;
  std::vector<double> plain(trials), permuted(trials);
  for (int t = 0; t < trials; ++t) {
    plain[t] = max_modulus(sample_haar_unitary(RngStream{31, {static_cast<std::uint64_t>(t)}}, dim).eigen());
    const auto u = sample_haar_unitary(RngStream{32, {static_cast<std::uint64_t>(t)}}, dim).eigen();
    permuted[t] = max_modulus(p * u * q);
  }
  const double critical = 1.628 * std::sqrt(2.0 / trials);  // alpha = 0.01
  EXPECT_LT(two_sample_ks(plain, permuted), critical);
}

TEST(PureStateSampler, NormAndSymmetry) {
  constexpr int trials = 10000;
  double first = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto psi = sample_pure_state(RngStream{41, {static_cast<std::uint64_t>(t)}}, 2);
    ASSERT_NEAR(psi.amplitudes().norm(), 1.0, 1e-10);
    first += std::norm(psi.amplitudes()(0));
  }
  EXPECT_NEAR(first / trials, 0.5, 0.02);
  EXPECT_THROW(sample_pure_state(RngStream{}, 0), InvalidInput);
}

TEST(PureStateSampler, MeanEntropyAtSixteen) {
  constexpr int trials = 10000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto a = sample_pure_state(RngStream{42, {static_cast<std::uint64_t>(t)}}, 16).amplitudes();
    std::vector<double> p(16);
    for (int i = 0; i < 16; ++i) p[i] = std::norm(a(i));
    sum += eurlab::testing::plain_entropy(p);
  }
  const double want = boost::math::digamma(17.0) - boost::math::digamma(2.0);
  EXPECT_NEAR(sum / trials, want, 0.01);
}

TEST(PureStateType, Constructors) {
  EXPECT_THROW(PureState(Eigen::VectorXcd::Ones(2)), InvalidInput);
  const auto s = PureState::normalized(Eigen::VectorXcd::Ones(4));
  EXPECT_NEAR(std::abs(s.amplitudes()(3)), 0.5, 1e-15);
  EXPECT_THROW(PureState::normalized(Eigen::VectorXcd::Zero(3)), InvalidInput);
  EXPECT_EQ(PureState::basis(3, 2).amplitudes()(2), Complex(1.0));
}
