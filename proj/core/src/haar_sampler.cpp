#include "eurlab/haar_sampler.hpp"

#include <cmath>

#include "eurlab/error.hpp"

namespace eurlab {

namespace {

Eigen::MatrixXcd ginibre_values(const RngStream& stream, std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) throw InvalidInput("sample dimensions must be positive");
  StreamEngine engine(stream);
  const double scale = std::sqrt(0.5);
  Eigen::MatrixXcd g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = engine.gaussian();
      const double im = engine.gaussian();
      g(i, j) = Complex(scale * re, scale * im);
    }
  }
  return g;
}

}  // namespace

PureState::PureState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) throw InvalidInput("state dimension must be positive");
  if (!amplitudes_.allFinite()) throw InvalidInput("state amplitudes must be finite");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-10) throw InvalidInput("state is not normalized");
}

PureState PureState::normalized(Eigen::VectorXcd v) {
  if (v.size() < 1) throw InvalidInput("state dimension must be positive");
  const double n = v.norm();
  if (!std::isfinite(n) || n == 0.0) throw InvalidInput("cannot normalize a zero or non-finite vector");
  v /= n;
  return PureState(std::move(v));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InvalidInput("basis index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(v));
}

ComplexMatrix sample_ginibre(const RngStream& stream, std::size_t rows, std::size_t cols) {
  return ComplexMatrix(ginibre_values(stream, rows, cols));
}

ComplexMatrix sample_haar_unitary(const RngStream& stream, std::size_t n) {
  Eigen::MatrixXcd g = ginibre_values(stream, n, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const auto& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    // A zero pivot has probability zero; leave that column's phase alone.
    if (a > 0.0) q.col(j) *= d / a;
  }
  return ComplexMatrix(std::move(q));
}

PureState sample_pure_state(const RngStream& stream, std::size_t n) {
  Eigen::MatrixXcd g = ginibre_values(stream, n, 1);
  return PureState::normalized(g.col(0));
}

}  // namespace eurlab
