#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "eurlab/haar_sampler.hpp"
#include "eurlab/matrix_core.hpp"
#include "eurlab/rng.hpp"

namespace eurlab {

struct MinimizeOptions {
  std::size_t restarts = 32;
  std::size_t max_iterations = 1000;
  double step_init = 0.5;
  double tol_gradient = 1e-10;
  double tol_value = 1e-9;
  RngStream rng{};
  bool include_basis_states = true;
  std::size_t workers = 1;

  void validate() const;
};

/// The best point found. `value` is an upper value for min over states of
/// the entropy sum, never a certified minimum.
struct MinimizeResult {
  double value = 0.0;
  PureState state;
  std::size_t iterations_used = 0;
  bool converged = false;
};

struct EntropyGradient {
  Eigen::VectorXcd gradient;
  /// Set when some probability fell below 1e-12 and the log was clamped, so
  /// the result is a subgradient rather than a gradient.
  bool clamped = false;
};

/// sum_i H(p^(i)) with p^(i)_j = |<u^(i)_j|psi>|^2.
double entropy_sum(std::span<const ComplexMatrix> us, const PureState& psi);

/// Tangent-space gradient of entropy_sum at psi.
EntropyGradient entropy_gradient(std::span<const ComplexMatrix> us, const PureState& psi);

MinimizeResult minimize_entropy_sum(std::span<const ComplexMatrix> us, const MinimizeOptions& opts);

}  // namespace eurlab
