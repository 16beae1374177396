#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "eurlab/uncertainty_bounds.hpp"

namespace eurlab {

namespace constants {
// Prefactor of the uniform envelope on s_k.
inline constexpr double kEnvelope = 4.18;
// Additive constant in the ln N - C lower bound on the entropy sum.
inline constexpr double kEntropyGap = 3.49;
// Reported value of the gap integral.
inline constexpr double kGapIntegral = 3.488;
// Upper limit of the gap integral (just above the critical fraction 0.051).
inline constexpr double kGapIntegralLimit = 0.052;
// Target constant for the per-split expectation bound.
inline constexpr double kSplitTarget = 4.175;
// Reported minimum of the epsilon objective and its argmin.
inline constexpr double kSplitObjectiveMin = 4.172;
inline constexpr double kSplitObjectiveArgmin = 0.039;
// Reported critical fraction x* solving kEnvelope x (1 + ln(2/x)) = 1.
inline constexpr double kCriticalFraction = 0.051;
// Lower edge of the sandwich: 1 - gamma = digamma(2).
inline constexpr double kSandwichUpperOffset = 0.42;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
}  // namespace constants

struct NamedConstant {
  std::string name;
  double value = 0.0;
  std::string location;
  std::string meaning;
};

/// Every constant the library uses, in a fixed order.
const std::vector<NamedConstant>& constants_table();
/// JSON array of {name, value, location, meaning}.
std::string constants_json();

struct AsymptoticPrediction {
  std::string name;
  double formula_value = 0.0;
  std::map<std::string, double> constants_used;
};

/// H_m: exact compensated summation up to 10^6, asymptotic series beyond.
double harmonic_number(std::size_t m);
/// ln m + gamma + 1/(2m) - 1/(12 m^2); truncation error below 1/(120 m^4).
double harmonic_asymptotic(std::size_t m);

/// (n/N)(1 + H_N - H_n): mean squared max-norm of an n-subvector of a Haar column.
double expected_subvector_norm_sq(std::size_t n, std::size_t dim);
/// (1/N)(H_N - H_{m-1}): mean of the m-th largest squared modulus of a Haar column.
double expected_ordered_weight(std::size_t m, std::size_t dim);

double digamma(double z);
/// Psi(N+1) - Psi(2), the mean entropy of a uniformly random pure state.
double jones_mean_entropy(std::size_t dim);

/// sqrt(2 ln N / N).
double jiang_scale(std::size_t dim);
/// sqrt((n+m) ln N / N).
double fixed_block_scale(std::size_t n, std::size_t m, std::size_t dim);
/// sqrt(((n+1)/N)(1 + ln(N/n))).
double one_column_scale(std::size_t n, std::size_t dim);

/// sqrt(C_f ((k+1)/N)(1 + ln(2N/(k+1)))), C_f = 4.18.
double sk_envelope(std::size_t k, std::size_t dim);
/// Same shape with an arbitrary prefactor (the per-split expectation target).
double split_norm_target(std::size_t k, std::size_t dim, double prefactor);
/// Mean-norm bound for one (n, m) split at accuracy eps in (0, 1/3).
double split_expectation_bound(std::size_t n, std::size_t m, std::size_t dim, double eps);

/// Root of C_f x (1 + ln(2/x)) = 1 on (0, 1) by bisection.
double critical_fraction();

/// sqrt(C_f) ln(2/x) / (2 sqrt(x ln(2e/x))).
double gap_density(double x);
/// gap_density(x) * ln(gap_density(x)).
double gap_integrand(double x);
/// Integral of gap_integrand over (0, 0.052), via x = t^2.
double gap_integral(double tolerance = 1e-6);

/// (1/(1-2eps-eps^2)^2)(1 + 2 ln(1 + 2/eps) / ln(2 e D)).
double split_objective(double eps, double target);
struct ObjectiveMinimum {
  double eps = 0.0;
  double value = 0.0;
};
/// Golden-section minimum over eps in (0, 1/3).
ObjectiveMinimum minimize_split_objective(double target = constants::kSplitTarget);

/// Probability vector dominating the direct-sum partial sums under the
/// envelope, built by the running-sum rule; `cutoff` is N_0.
struct EnvelopeVector {
  ProbVector r;
  std::size_t cutoff = 0;
};
EnvelopeVector r_vector(std::size_t dim);

/// 1 + sqrt(c_g ((k+1)/N) ln(e N L/(k+1))), envelope for sqrt(S_k).
double multi_envelope(std::size_t k, std::size_t dim, std::size_t measurements, double c_g);

}  // namespace eurlab
