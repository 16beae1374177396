#include "eurlab/state_minimizer.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "eurlab/error.hpp"
#include "eurlab/parallel.hpp"

namespace eurlab {

namespace {

constexpr double kProbabilityFloor = 1e-300;  // ln(1e-300) ~ -690.8
constexpr double kClampReport = 1e-12;
constexpr double kArmijo = 1e-4;
constexpr std::size_t kStagnationWindow = 20;

void validate_inputs(std::span<const ComplexMatrix> us, std::size_t dim) {
  if (us.empty()) throw InvalidInput("at least one measurement is required");
  for (const auto& u : us) {
    if (!u.is_square() || u.rows() != dim) throw InvalidInput("measurement dimensions differ");
  }
}

double entropy_sum_raw(std::span<const ComplexMatrix> us, const Eigen::VectorXcd& psi) {
  double f = 0.0;
  for (const auto& u : us) {
    const Eigen::VectorXcd a = u.eigen().adjoint() * psi;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      const double p = std::norm(a(j));
      if (p > 0.0) f -= p * std::log(p);
    }
  }
  return f;
}

EntropyGradient gradient_raw(std::span<const ComplexMatrix> us, const Eigen::VectorXcd& psi) {
  EntropyGradient out;
  out.gradient = Eigen::VectorXcd::Zero(psi.size());
  for (const auto& u : us) {
    Eigen::VectorXcd a = u.eigen().adjoint() * psi;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
      const double p = std::norm(a(j));
      if (p < kClampReport) out.clamped = true;
      a(j) *= -2.0 * (1.0 + std::log(std::max(p, kProbabilityFloor)));
    }
    out.gradient += u.eigen() * a;
  }
  const Complex radial = psi.dot(out.gradient);  // <psi|g>
  out.gradient -= radial * psi;
  return out;
}

struct Descent {
  Eigen::VectorXcd psi;
  double value = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;
};

Descent descend(std::span<const ComplexMatrix> us, Eigen::VectorXcd psi, const MinimizeOptions& opts) {
  Descent d;
  psi.normalize();
  double f = entropy_sum_raw(us, psi);
  std::size_t stagnant = 0;
  std::size_t it = 0;
  for (; it < opts.max_iterations; ++it) {
    const Eigen::VectorXcd g = gradient_raw(us, psi).gradient;
    const double g2 = g.squaredNorm();
    if (std::sqrt(g2) < opts.tol_gradient) {
      d.converged = true;
      break;
    }
    double t = opts.step_init;
    bool accepted = false;
    Eigen::VectorXcd candidate;
    double fc = f;
    while (t > 1e-14) {
      candidate = psi - t * g;
      candidate.normalize();
      fc = entropy_sum_raw(us, candidate);
      if (fc <= f - kArmijo * t * g2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      d.converged = true;
      break;
    }
    stagnant = (f - fc < opts.tol_value) ? stagnant + 1 : 0;
    psi = std::move(candidate);
    f = fc;
    if (stagnant >= kStagnationWindow) {
      d.converged = true;
      ++it;
      break;
    }
  }
  d.psi = std::move(psi);
  d.value = f;
  d.iterations = it;
  return d;
}

}  // namespace

void MinimizeOptions::validate() const {
  if (restarts < 1) throw InvalidInput("restarts must be at least 1");
  if (!(tol_gradient > 0.0) || !(tol_value > 0.0)) throw InvalidInput("tolerances must be positive");
  if (!(step_init > 0.0)) throw InvalidInput("initial step must be positive");
}

double entropy_sum(std::span<const ComplexMatrix> us, const PureState& psi) {
  validate_inputs(us, psi.dim());
  return entropy_sum_raw(us, psi.amplitudes());
}

EntropyGradient entropy_gradient(std::span<const ComplexMatrix> us, const PureState& psi) {
  validate_inputs(us, psi.dim());
  return gradient_raw(us, psi.amplitudes());
}

MinimizeResult minimize_entropy_sum(std::span<const ComplexMatrix> us, const MinimizeOptions& opts) {
  opts.validate();
  if (us.empty()) throw InvalidInput("at least one measurement is required");
  const std::size_t dim = us.front().rows();
  validate_inputs(us, dim);
  for (const auto& u : us) {
    if (unitarity_defect(u) > 1e-8) throw InvalidInput("measurement matrix is not unitary");
  }

  std::vector<Eigen::VectorXcd> starts;
  if (opts.include_basis_states) {
    for (const auto& u : us) {
      for (Eigen::Index j = 0; j < u.eigen().cols(); ++j) starts.push_back(u.eigen().col(j));
    }
  }
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    starts.push_back(sample_pure_state(opts.rng.child(r), dim).amplitudes());
  }

  std::vector<Descent> runs(starts.size());
  parallel_for(starts.size(), opts.workers,
               [&](std::size_t i) { runs[i] = descend(us, starts[i], opts); });

  std::size_t best = 0;
  std::size_t iterations = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    iterations += runs[i].iterations;
    if (runs[i].value < runs[best].value) best = i;
  }
  PureState state = PureState::normalized(runs[best].psi);
  const double value = entropy_sum_raw(us, state.amplitudes());
  return MinimizeResult{value, std::move(state), iterations, runs[best].converged};
}

}  // namespace eurlab
