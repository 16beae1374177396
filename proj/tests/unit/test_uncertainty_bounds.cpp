#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "eurlab/error.hpp"
#include "eurlab/haar_sampler.hpp"
#include "eurlab/rng.hpp"
#include "eurlab/uncertainty_bounds.hpp"
#include "oracles.hpp"

using namespace eurlab;
namespace oracle = eurlab::testing;

namespace {

ComplexMatrix haar(std::uint64_t seed, std::size_t n) { return sample_haar_unitary(RngStream{seed, {}}, n); }

std::vector<double> random_distribution(StreamEngine& e, std::size_t n) {
  std::vector<double> w(n);
  for (auto& x : w) x = -std::log(1.0 - e.uniform());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

TEST(ShannonEntropy, Examples) {
  EXPECT_EQ(shannon_entropy(ProbVector({1.0, 0.0, 0.0})), 0.0);
  EXPECT_NEAR(shannon_entropy(ProbVector({0.5, 0.5})), std::log(2.0), 1e-15);
  EXPECT_NEAR(shannon_entropy(ProbVector({0.25, 0.75})), 0.5623351446188083, 1e-14);
}

TEST(ProbVectorType, ClampAndErrors) {
  const ProbVector v({1.0 + 5e-13, -5e-13});
  EXPECT_EQ(v[1], 0.0);
  EXPECT_THROW(ProbVector({1.1, -0.1}), InvalidInput);
  EXPECT_THROW(ProbVector({0.5, 0.4}), InvalidInput);
  EXPECT_THROW(ProbVector({0.5, NAN}), InvalidInput);
  EXPECT_NO_THROW(ProbVector({1.0, 1.0}, 2.0));
  const ProbVector p({0.2, 0.5, 0.3});
  EXPECT_EQ(p.sorted_descending(), (std::vector<double>{0.5, 0.3, 0.2}));
  const auto ps = p.partial_sums();
  EXPECT_NEAR(ps[1], 0.8, 1e-15);
  EXPECT_NEAR(ps[2], 1.0, 1e-15);
}

TEST(MeasurementDistribution, Examples) {
  const auto e1 = PureState::basis(3, 0);
  const auto p = measurement_distribution(ComplexMatrix::identity(3), e1);
  EXPECT_EQ(p.weights(), (std::vector<double>{1.0, 0.0, 0.0}));
  const auto q = measurement_distribution(oracle::fourier(2), PureState::basis(2, 0));
  EXPECT_NEAR(q[0], 0.5, 1e-15);
  EXPECT_NEAR(q[1], 0.5, 1e-15);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const auto r = measurement_distribution(haar(t, 4), sample_pure_state(RngStream{t, {1}}, 4));
    EXPECT_NEAR(std::accumulate(r.weights().begin(), r.weights().end(), 0.0), 1.0, 1e-9);
  }
  EXPECT_THROW(measurement_distribution(ComplexMatrix::identity(3), PureState::basis(2, 0)),
               InvalidInput);
}

TEST(MaassenUffink, Examples) {
  EXPECT_NEAR(maassen_uffink(ComplexMatrix::identity(4)), 0.0, 1e-15);
  for (std::size_t n : {2u, 5u, 16u}) {
    EXPECT_NEAR(maassen_uffink(oracle::fourier(n)), std::log(static_cast<double>(n)), 1e-12);
  }
}

TEST(ColesPiani, FourierHasNoCorrection) {
  const auto f = oracle::fourier(4);
  EXPECT_NEAR(coles_piani(f), std::log(4.0), 1e-12);
  EXPECT_NEAR(coles_piani(f), maassen_uffink(f), 1e-12);
  EXPECT_THROW(coles_piani(ComplexMatrix::identity(1)), InvalidInput);
}

TEST(ColesPiani, HandEvaluationOnRotations) {
  // Rotation with cos = 0.9 in the (0, 1) plane followed by a 30 degree
  // rotation in the (1, 2) plane: distinct largest and second moduli.
  Eigen::MatrixXcd a = oracle::rotation(3, std::acos(0.9)).eigen();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(3, 3);
  const double t = std::acos(-1.0) / 6;
  b(1, 1) = std::cos(t);
  b(1, 2) = -std::sin(t);
  b(2, 1) = std::sin(t);
  b(2, 2) = std::cos(t);
  const ComplexMatrix u(Eigen::MatrixXcd(b * a));
  std::vector<double> mods;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) mods.push_back(std::abs(u(i, j)));
  }
  std::sort(mods.begin(), mods.end(), std::greater<>());
  const double c = mods[0], c2 = mods[1];
  EXPECT_NEAR(c, 0.9, 1e-15);
  const double want = -std::log(c * c) + (0.5 - c / 2) * std::log(c * c / (c2 * c2));
  EXPECT_NEAR(coles_piani(u), want, 1e-13);
  // The alternative form (1 - c) ln(c / c2) is the same number.
  EXPECT_NEAR(coles_piani(u), -2 * std::log(c) + (1 - c) * std::log(c / c2), 1e-13);
}

TEST(ColesPiani, NeverBelowMaassenUffink) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto u = haar(50 + t, 2 + t % 7);
    EXPECT_GE(coles_piani(u), maassen_uffink(u) - 1e-9);
  }
}

TEST(TensorBound, IdentityAndFourier) {
  const auto r_id = r_profile(s_profile(ComplexMatrix::identity(4), SearchBudget{}));
  const auto q_id = tensor_majorizer(r_id);
  EXPECT_NEAR(q_id[0], 1.0, 1e-14);
  EXPECT_NEAR(tensor_majorization_bound(r_id), 0.0, 1e-12);

  const auto r = r_profile(s_profile(oracle::fourier(2), SearchBudget{}));
  const auto q = tensor_majorizer(r);
  const double r1 = std::pow((1 + 1 / std::sqrt(2.0)) / 2, 2);
  EXPECT_NEAR(q[0], r1, 1e-14);
  EXPECT_NEAR(q[1], 1 - r1, 1e-14);
  EXPECT_NEAR(tensor_majorization_bound(r), oracle::plain_entropy({r1, 1 - r1}), 1e-13);
  EXPECT_NEAR(tensor_majorization_bound(r), 0.58469, 1e-5);
}

TEST(TensorBound, CeilingForNAtLeastFour) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    const std::size_t n = 4 + t % 3;
    const auto r = r_profile(s_profile(haar(70 + t, n), SearchBudget{}));
    const double ceiling = 0.75 * std::log(n - 1.0) + 0.25 * std::log(4.0) + 0.75 * std::log(4.0 / 3);
    EXPECT_LE(tensor_majorization_bound(r), ceiling + 1e-9);
  }
}

TEST(TensorBound, WrongKindRejected) {
  const auto s = s_profile(ComplexMatrix::identity(3), SearchBudget{});
  EXPECT_THROW(tensor_majorization_bound(s), InvalidInput);
  EXPECT_THROW(strong_direct_sum_bound(r_profile(s)), InvalidInput);
}

TEST(TensorBound, NonMonotoneRejected) {
  std::vector<ProfileEntry> entries(3);
  const double vals[] = {0.9, 0.8, 1.0};
  for (std::size_t i = 0; i < 3; ++i) {
    entries[i].k = i + 1;
    entries[i].value = vals[i];
  }
  const NormProfile bad(ProfileKind::R, 3, 1, entries);
  EXPECT_THROW(tensor_majorization_bound(bad), InvalidInput);
}

TEST(StrongBound, IdentityAndFourier) {
  EXPECT_NEAR(strong_direct_sum_bound(s_profile(ComplexMatrix::identity(3), SearchBudget{})), 0.0,
              1e-12);
  const auto s = s_profile(oracle::fourier(2), SearchBudget{});
  const double s1 = 1 / std::sqrt(2.0);
  EXPECT_NEAR(strong_direct_sum_bound(s), oracle::plain_entropy({s1, 1 - s1}), 1e-13);
  EXPECT_NEAR(strong_direct_sum_bound(s), 0.60472, 1e-5);
  const auto inc = direct_sum_increments(s);
  EXPECT_NEAR(inc.declared_mass(), 1.0, 1e-12);
  const auto maj = direct_sum_majorizer(s);
  EXPECT_EQ(maj.size(), 3u);
  EXPECT_NEAR(maj.declared_mass(), 2.0, 1e-12);
  EXPECT_EQ(maj[0], 1.0);
}

TEST(StrongBound, NotWeakerThanTensorBound) {
  for (std::uint64_t t = 0; t < 40; ++t) {
    const auto s = s_profile(haar(90 + t, 3 + t % 3), SearchBudget{});
    EXPECT_GE(strong_direct_sum_bound(s), tensor_majorization_bound(r_profile(s)) - 1e-9);
  }
}

TEST(MultiBound, DuplicatedIdentityCarriesNoUncertainty) {
  const ComplexMatrix us[] = {ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
  const auto big_s = multi_measurement_profile(us, SearchBudget{});
  const auto x = multi_measurement_majorizer(big_s);
  EXPECT_NEAR(x.declared_mass(), 2.0, 1e-12);
  EXPECT_NEAR(multi_measurement_bound(big_s), 0.0, 1e-12);
}

TEST(MultiBound, IdentityAndFourierByHand) {
  const ComplexMatrix us[] = {ComplexMatrix::identity(2), oracle::fourier(2)};
  const auto big_s = multi_measurement_profile(us, SearchBudget{});
  const auto brute = oracle::brute_multi_profile(us);
  std::vector<double> diffs;
  double prev = 0.0;
  for (double v : brute) {
    diffs.push_back(v - prev);
    prev = v;
  }
  diffs.push_back(2.0 - prev);
  EXPECT_NEAR(diffs[1], 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(multi_measurement_bound(big_s), oracle::plain_entropy(diffs), 1e-10);
}

TEST(MultiBound, DecreasingProfileRejected) {
  std::vector<ProfileEntry> entries(4);
  const double vals[] = {1.0, 1.6, 1.5, 2.0};
  for (std::size_t i = 0; i < 4; ++i) {
    entries[i].k = i;
    entries[i].value = vals[i];
  }
  EXPECT_THROW(multi_measurement_bound(NormProfile(ProfileKind::S, 2, 2, entries)), InvalidInput);
}

TEST(Majorization, Examples) {
  EXPECT_TRUE(is_majorized(ProbVector({0.5, 0.5}), ProbVector({1.0, 0.0})));
  EXPECT_FALSE(is_majorized(ProbVector({1.0, 0.0}), ProbVector({0.5, 0.5})));
  EXPECT_THROW(is_majorized(ProbVector({1.0}), ProbVector({1.0, 1.0}, 2.0)), InvalidInput);
  // Different lengths are compared with zero padding.
  EXPECT_TRUE(is_majorized(ProbVector({0.25, 0.25, 0.25, 0.25}), ProbVector({0.5, 0.5})));
}

TEST(Majorization, TensorChainOnExactProfiles) {
  for (std::uint64_t t = 0; t < 5; ++t) {
    const auto u = haar(110 + t, 5);
    const auto q = tensor_majorizer(r_profile(s_profile(u, SearchBudget{})));
    const auto id = ComplexMatrix::identity(5);
    for (std::uint64_t j = 0; j < 1000; ++j) {
      const auto psi = sample_pure_state(RngStream{110 + t, {j}}, 5);
      const auto pq = tensor_product(measurement_distribution(id, psi), measurement_distribution(u, psi));
      ASSERT_TRUE(is_majorized(pq, q)) << "trial " << t << " state " << j;
    }
  }
}

TEST(Majorization, DirectSumChainOnExactProfiles) {
  for (std::uint64_t t = 0; t < 6; ++t) {
    const std::size_t n = t % 2 == 0 ? 4 : 6;
    const auto u = haar(120 + t, n);
    const auto s = s_profile(u, SearchBudget{});
    const auto maj = direct_sum_majorizer(s);
    const auto id = ComplexMatrix::identity(n);
    for (std::uint64_t j = 0; j < 1000; ++j) {
      const auto psi = sample_pure_state(RngStream{120 + t, {j}}, n);
      const ProbVector parts[] = {measurement_distribution(id, psi), measurement_distribution(u, psi)};
      const auto sum = direct_sum(parts);
      ASSERT_TRUE(is_majorized(sum, maj));
      const auto ps = oracle::sorted_partial_sums(sum.weights());
      for (std::size_t k = 2; k <= n + 1; ++k) {
        ASSERT_LE(ps[k - 1], 1.0 + s.at(k - 1) + 1e-9);
      }
    }
  }
}

TEST(SchurConcavity, RobinHoodTransfers) {
  StreamEngine e(RngStream{130, {}});
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + e.uniform_index(8);
    const auto y = random_distribution(e, n);
    // Moving mass from a richer to a poorer entry produces x majorized by y.
    auto x = y;
    const std::size_t i = e.uniform_index(n), j = e.uniform_index(n);
    const std::size_t rich = x[i] >= x[j] ? i : j, poor = rich == i ? j : i;
    const double move = e.uniform() * 0.5 * (x[rich] - x[poor]);
    x[rich] -= move;
    x[poor] += move;
    const ProbVector px(x), py(y);
    ASSERT_TRUE(is_majorized(px, py));
    EXPECT_GE(shannon_entropy(px), shannon_entropy(py) - 1e-9);
  }
}

TEST(Products, DirectSumAndTensor) {
  const ProbVector one({1.0});
  const ProbVector ones[] = {one, one};
  const auto d = direct_sum(ones);
  EXPECT_EQ(d.weights(), (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(d.declared_mass(), 2.0);
  const auto t = tensor_product(ProbVector({0.5, 0.5}), ProbVector({0.5, 0.5}));
  EXPECT_EQ(t.weights(), (std::vector<double>{0.25, 0.25, 0.25, 0.25}));

  StreamEngine e(RngStream{140, {}});
  for (int k = 0; k < 50; ++k) {
    const ProbVector x(random_distribution(e, 3)), y(random_distribution(e, 4));
    const ProbVector both[] = {x, y};
    EXPECT_NEAR(direct_sum(both).declared_mass(), 2.0, 1e-12);
    const auto xy = tensor_product(x, y);
    EXPECT_NEAR(xy.declared_mass(), 1.0, 1e-12);
    EXPECT_NEAR(shannon_entropy(xy), shannon_entropy(x) + shannon_entropy(y), 1e-9);
  }
}

TEST(BoundReportTest, OrderingAndCsv) {
  const auto u = haar(150, 5);
  const auto rep = make_bound_report(u, s_profile(u, SearchBudget{}));
  EXPECT_GE(rep.b_cp, rep.b_mu - 1e-9);
  EXPECT_GE(rep.strong, rep.h_q - 1e-9);
  EXPECT_TRUE(rep.violations().empty());
  EXPECT_NEAR(rep.c, entry_extremes(u).largest, 1e-15);
  const auto header = bound_report_csv_header();
  const auto row = bound_report_csv_row(rep);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));

  BoundReport broken = rep;
  broken.min_upper = rep.strong - 0.1;
  EXPECT_FALSE(broken.violations().empty());
}
