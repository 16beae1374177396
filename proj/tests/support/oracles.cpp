#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace eurlab::testing {

double jacobi_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

std::vector<double> jacobi_spectrum(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

void for_each_subset_desc(std::size_t n, std::size_t k,
                          const std::function<void(std::uint32_t)>& visit) {
  for (std::uint32_t mask = (1u << n); mask-- > 0;) {
    if (static_cast<std::size_t>(std::popcount(mask)) == k) visit(mask);
  }
}

std::vector<Eigen::Index> mask_members(std::uint32_t mask) {
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

double brute_block_norm(const ComplexMatrix& u, std::size_t n, std::size_t m) {
  const auto& a = u.eigen();
  double best = 0.0;
  for_each_subset_desc(u.rows(), n, [&](std::uint32_t rmask) {
    const auto rows = mask_members(rmask);
    for_each_subset_desc(u.cols(), m, [&](std::uint32_t cmask) {
      const auto cols = mask_members(cmask);
      const Eigen::MatrixXcd block = a(rows, cols);
      best = std::max(best, singular_spectrum(ComplexMatrix(block)).values.front());
    });
  });
  return best;
}

std::vector<double> brute_s_profile(const ComplexMatrix& u) {
  const std::size_t dim = u.rows();
  std::vector<double> s;
  for (std::size_t k = 1; k <= dim; ++k) {
    double best = 0.0;
    for (std::size_t n = 1; n <= k; ++n) {
      const std::size_t m = k + 1 - n;
      if (n > dim || m > dim || m < 1) continue;
      best = std::max(best, brute_block_norm(u, n, m));
    }
    s.push_back(best);
  }
  return s;
}

std::vector<double> brute_r_profile(const std::vector<double>& s) {
  std::vector<double> r;
  for (double v : s) r.push_back(0.25 * (1.0 + v) * (1.0 + v));
  return r;
}

std::vector<double> brute_multi_profile(std::span<const ComplexMatrix> us) {
  const auto dim = static_cast<Eigen::Index>(us.front().rows());
  Eigen::MatrixXcd cat(dim, dim * static_cast<Eigen::Index>(us.size()));
  for (std::size_t i = 0; i < us.size(); ++i) {
    cat.middleCols(static_cast<Eigen::Index>(i) * dim, dim) = us[i].eigen();
  }
  const auto total = static_cast<std::size_t>(cat.cols());
  std::vector<double> big_s;
  for (std::size_t k = 0; k < total; ++k) {
    double best = 0.0;
    for_each_subset_desc(total, k + 1, [&](std::uint32_t mask) {
      const Eigen::MatrixXcd block = cat(Eigen::all, mask_members(mask));
      const double top = singular_spectrum(ComplexMatrix(block)).values.front();
      best = std::max(best, top * top);
    });
    big_s.push_back(best);
  }
  return big_s;
}

ComplexMatrix fourier(std::size_t n) {
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) /
                           static_cast<double>(n);
      f(j, k) = std::polar(scale, angle);
    }
  }
  return ComplexMatrix(std::move(f));
}

ComplexMatrix rotation(std::size_t n, double theta) {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(n, n);
  r(0, 0) = std::cos(theta);
  r(0, 1) = -std::sin(theta);
  r(1, 0) = std::sin(theta);
  r(1, 1) = std::cos(theta);
  return ComplexMatrix(std::move(r));
}

double plain_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double entropy_sum_of(std::span<const ComplexMatrix> us, const Eigen::VectorXcd& v) {
  const Eigen::VectorXcd psi = v / v.norm();
  double total = 0.0;
  for (const auto& u : us) {
    const Eigen::VectorXcd a = u.eigen().adjoint() * psi;
    std::vector<double> p(static_cast<std::size_t>(a.size()));
    for (Eigen::Index j = 0; j < a.size(); ++j) p[static_cast<std::size_t>(j)] = std::norm(a(j));
    total += plain_entropy(p);
  }
  return total;
}

Eigen::VectorXcd finite_difference_gradient(std::span<const ComplexMatrix> us,
                                            const Eigen::VectorXcd& psi, double step) {
  Eigen::VectorXcd g(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    double parts[2];
    const Complex dirs[2] = {Complex(step, 0.0), Complex(0.0, step)};
    for (int d = 0; d < 2; ++d) {
      Eigen::VectorXcd plus = psi;
      Eigen::VectorXcd minus = psi;
      plus(i) += dirs[d];
      minus(i) -= dirs[d];
      parts[d] = (entropy_sum_of(us, plus) - entropy_sum_of(us, minus)) / (2.0 * step);
    }
    g(i) = Complex(parts[0], parts[1]);
  }
  return g;
}

std::vector<double> sorted_partial_sums(std::vector<double> x) {
  std::sort(x.begin(), x.end(), std::greater<>());
  double run = 0.0;
  for (double& v : x) {
    run += v;
    v = run;
  }
  return x;
}

}  // namespace eurlab::testing
