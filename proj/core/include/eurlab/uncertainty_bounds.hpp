#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eurlab/haar_sampler.hpp"
#include "eurlab/matrix_core.hpp"
#include "eurlab/submatrix_search.hpp"

namespace eurlab {

/// Nonnegative weights summing to a declared mass (1 for a distribution,
/// L for an L-fold direct sum). Weights in [-1e-12, 0) are clamped to zero;
/// anything more negative is rejected. Mass must match within 1e-8.
class ProbVector {
 public:
  ProbVector(std::vector<double> weights, double declared_mass = 1.0);

  const std::vector<double>& weights() const { return weights_; }
  double declared_mass() const { return mass_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  /// Nonincreasing rearrangement.
  std::vector<double> sorted_descending() const;
  /// Partial sums of the nonincreasing rearrangement.
  std::vector<double> partial_sums() const;

 private:
  std::vector<double> weights_;
  double mass_;
};

inline constexpr double kNegativeClamp = 1e-12;
inline constexpr double kMajorizationTolerance = 1e-9;

/// -sum w ln w with 0 ln 0 = 0 (natural log; divide by ln 2 for bits).
double shannon_entropy(const ProbVector& v);

ProbVector measurement_distribution(const ComplexMatrix& u, const PureState& psi);

/// -ln c^2 with c the largest entry modulus.
double maassen_uffink(const ComplexMatrix& u);
/// -ln c^2 + (1/2 - c/2) ln(c^2 / c_2^2), c_2 the second largest modulus.
double coles_piani(const ComplexMatrix& u);

/// Q = (R_1, R_2 - R_1, ..., R_N - R_{N-1}).
ProbVector tensor_majorizer(const NormProfile& r);
/// H(Q); lower bound from the product majorization p (x) q < Q.
double tensor_majorization_bound(const NormProfile& r);

/// (s_1, s_2 - s_1, ..., s_N - s_{N-1}) with mass s_N.
ProbVector direct_sum_increments(const NormProfile& s);
/// (1, s_1, s_2 - s_1, ...), the majorizer of p (+) q.
ProbVector direct_sum_majorizer(const NormProfile& s);
double strong_direct_sum_bound(const NormProfile& s);

/// (S_0, S_1 - S_0, ..., S_LN - S_{LN-1}) with S_LN = L.
ProbVector multi_measurement_majorizer(const NormProfile& big_s);
double multi_measurement_bound(const NormProfile& big_s);

bool is_majorized(const ProbVector& x, const ProbVector& y,
                  double tol = kMajorizationTolerance);

ProbVector direct_sum(std::span<const ProbVector> vs);
ProbVector tensor_product(const ProbVector& x, const ProbVector& y);

/// Every lower bound for one pair of bases related by `u`, plus the
/// multi-measurement bound and minimizer upper value when available.
struct BoundReport {
  double b_mu = 0.0;
  double b_cp = 0.0;
  double h_q = 0.0;
  double strong = 0.0;
  std::optional<double> multi;
  std::optional<double> min_upper;
  double c = 0.0;
  double c2 = 0.0;

  /// Human-readable descriptions of violated invariants; empty when sound.
  std::vector<std::string> violations() const;
};

BoundReport make_bound_report(const ComplexMatrix& u, const NormProfile& s);

std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& report);

}  // namespace eurlab
