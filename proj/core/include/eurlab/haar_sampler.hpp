#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "eurlab/matrix_core.hpp"
#include "eurlab/rng.hpp"

namespace eurlab {

/// Unit vector in C^N.
class PureState {
 public:
  /// Requires Euclidean norm 1 within 1e-10.
  explicit PureState(Eigen::VectorXcd amplitudes);
  /// Rescales a nonzero finite vector to unit norm.
  static PureState normalized(Eigen::VectorXcd v);
  static PureState basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }

 private:
  Eigen::VectorXcd amplitudes_;
};

/// i.i.d. standard complex Gaussian entries (real and imaginary parts
/// independent N(0, 1/2)), drawn in row-major order.
ComplexMatrix sample_ginibre(const RngStream& stream, std::size_t rows, std::size_t cols);

/// Haar-distributed unitary: QR of a Ginibre draw with the phases of R's
/// diagonal moved into Q, so the result is exactly invariant.
ComplexMatrix sample_haar_unitary(const RngStream& stream, std::size_t n);

/// Uniform point on the unit sphere of C^n.
PureState sample_pure_state(const RngStream& stream, std::size_t n);

}  // namespace eurlab
