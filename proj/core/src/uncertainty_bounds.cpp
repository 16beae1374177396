#include "eurlab/uncertainty_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eurlab/error.hpp"
#include "eurlab/text.hpp"

namespace eurlab {

namespace {

// Successive differences of a profile that must be nondecreasing; float
// noise up to kNegativeClamp is clamped to zero.
std::vector<double> increments(const std::vector<double>& values, double first) {
  std::vector<double> out;
  out.reserve(values.size());
  double prev = first;
  for (double v : values) {
    const double d = v - prev;
    if (d < -kNegativeClamp) throw InvalidInput("profile is not nondecreasing");
    out.push_back(std::max(d, 0.0));
    prev = v;
  }
  return out;
}

double entropy_of(std::span<const double> w) {
  double h = 0.0;
  for (double x : w) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

void require_kind(const NormProfile& p, ProfileKind kind) {
  if (p.kind() != kind) {
    throw InvalidInput("expected a " + std::string(to_string(kind)) + "-profile, got " +
                       std::string(to_string(p.kind())));
  }
}

}  // namespace

ProbVector::ProbVector(std::vector<double> weights, double declared_mass)
    : weights_(std::move(weights)), mass_(declared_mass) {
  if (!(mass_ > 0.0) || !std::isfinite(mass_)) throw InvalidInput("declared mass must be positive");
  double total = 0.0;
  for (double& w : weights_) {
    if (!std::isfinite(w)) throw InvalidInput("weights must be finite");
    if (w < -kNegativeClamp) throw InvalidInput("negative weight");
    if (w < 0.0) w = 0.0;
    total += w;
  }
  if (std::abs(total - mass_) > 1e-8) throw InvalidInput("weights do not sum to the declared mass");
}

std::vector<double> ProbVector::sorted_descending() const {
  std::vector<double> s = weights_;
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

std::vector<double> ProbVector::partial_sums() const {
  std::vector<double> s = sorted_descending();
  std::partial_sum(s.begin(), s.end(), s.begin());
  return s;
}

double shannon_entropy(const ProbVector& v) { return entropy_of(v.weights()); }

ProbVector measurement_distribution(const ComplexMatrix& u, const PureState& psi) {
  if (!u.is_square() || u.rows() != psi.dim()) {
    throw InvalidInput("measurement basis and state dimensions differ");
  }
  const Eigen::VectorXcd amps = u.eigen().adjoint() * psi.amplitudes();
  std::vector<double> p(static_cast<std::size_t>(amps.size()));
  for (Eigen::Index j = 0; j < amps.size(); ++j) p[static_cast<std::size_t>(j)] = std::norm(amps(j));
  return ProbVector(std::move(p), 1.0);
}

double maassen_uffink(const ComplexMatrix& u) {
  if (!u.is_square()) throw InvalidInput("transition matrix must be square");
  const double c = entry_extremes(u).largest;
  return -2.0 * std::log(c);
}

double coles_piani(const ComplexMatrix& u) {
  if (!u.is_square()) throw InvalidInput("transition matrix must be square");
  if (u.rows() < 2) throw InvalidInput("Coles-Piani bound needs N >= 2");
  const EntryExtremes e = entry_extremes(u);
  if (e.second <= 0.0) throw InvalidInput("second largest modulus is zero");
  const double c = e.largest;
  const double c2 = e.second;
  return -2.0 * std::log(c) + (0.5 - 0.5 * c) * std::log((c * c) / (c2 * c2));
}

ProbVector tensor_majorizer(const NormProfile& r) {
  require_kind(r, ProfileKind::R);
  std::vector<double> q = increments(r.values(), 0.0);
  const double mass = std::accumulate(q.begin(), q.end(), 0.0);
  return ProbVector(std::move(q), mass);
}

double tensor_majorization_bound(const NormProfile& r) {
  return shannon_entropy(tensor_majorizer(r));
}

ProbVector direct_sum_increments(const NormProfile& s) {
  require_kind(s, ProfileKind::s);
  std::vector<double> d = increments(s.values(), 0.0);
  const double mass = std::accumulate(d.begin(), d.end(), 0.0);
  return ProbVector(std::move(d), mass);
}

ProbVector direct_sum_majorizer(const NormProfile& s) {
  ProbVector d = direct_sum_increments(s);
  std::vector<double> w;
  w.reserve(d.size() + 1);
  w.push_back(1.0);
  w.insert(w.end(), d.weights().begin(), d.weights().end());
  return ProbVector(std::move(w), 1.0 + d.declared_mass());
}

double strong_direct_sum_bound(const NormProfile& s) {
  return shannon_entropy(direct_sum_increments(s));
}

ProbVector multi_measurement_majorizer(const NormProfile& big_s) {
  require_kind(big_s, ProfileKind::S);
  std::vector<double> values = big_s.values();
  values.push_back(static_cast<double>(big_s.measurements()));
  std::vector<double> d = increments(values, 0.0);
  return ProbVector(std::move(d), static_cast<double>(big_s.measurements()));
}

double multi_measurement_bound(const NormProfile& big_s) {
  return shannon_entropy(multi_measurement_majorizer(big_s));
}

bool is_majorized(const ProbVector& x, const ProbVector& y, double tol) {
  if (std::abs(x.declared_mass() - y.declared_mass()) > tol) {
    throw InvalidInput("majorization compares vectors of equal mass");
  }
  const std::vector<double> px = x.partial_sums();
  const std::vector<double> py = y.partial_sums();
  const std::size_t len = std::max(px.size(), py.size());
  for (std::size_t k = 0; k < len; ++k) {
    const double a = px[std::min(k, px.size() - 1)];
    const double b = py[std::min(k, py.size() - 1)];
    if (a > b + tol) return false;
  }
  return std::abs(px.back() - py.back()) <= tol;
}

ProbVector direct_sum(std::span<const ProbVector> vs) {
  if (vs.empty()) throw InvalidInput("direct sum of nothing");
  std::vector<double> w;
  double mass = 0.0;
  for (const auto& v : vs) {
    w.insert(w.end(), v.weights().begin(), v.weights().end());
    mass += v.declared_mass();
  }
  return ProbVector(std::move(w), mass);
}

ProbVector tensor_product(const ProbVector& x, const ProbVector& y) {
  std::vector<double> w;
  w.reserve(x.size() * y.size());
  for (double a : x.weights()) {
    for (double b : y.weights()) w.push_back(a * b);
  }
  return ProbVector(std::move(w), x.declared_mass() * y.declared_mass());
}

std::vector<std::string> BoundReport::violations() const {
  std::vector<std::string> out;
  if (b_cp < b_mu - 1e-9) out.push_back("b_cp < b_mu");
  if (strong < h_q - 1e-9) out.push_back("strong < h_q");
  if (min_upper) {
    const double ceiling = *min_upper + 1e-6;
    if (b_mu > ceiling) out.push_back("b_mu exceeds minimizer upper value");
    if (b_cp > ceiling) out.push_back("b_cp exceeds minimizer upper value");
    if (h_q > ceiling) out.push_back("h_q exceeds minimizer upper value");
    if (strong > ceiling) out.push_back("strong exceeds minimizer upper value");
    if (multi && *multi > ceiling) out.push_back("multi exceeds minimizer upper value");
  }
  return out;
}

BoundReport make_bound_report(const ComplexMatrix& u, const NormProfile& s) {
  require_kind(s, ProfileKind::s);
  if (s.dim() != u.rows()) throw InvalidInput("profile dimension does not match the matrix");
  BoundReport rep;
  const EntryExtremes e = entry_extremes(u);
  rep.c = e.largest;
  rep.c2 = e.second;
  rep.b_mu = maassen_uffink(u);
  rep.b_cp = u.rows() >= 2 ? coles_piani(u) : rep.b_mu;
  rep.h_q = tensor_majorization_bound(r_profile(s));
  rep.strong = strong_direct_sum_bound(s);
  return rep;
}

std::string bound_report_csv_header() { return "b_mu,b_cp,h_q,strong,multi,min_upper,c,c2"; }

std::string bound_report_csv_row(const BoundReport& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  return format_double(r.b_mu) + ',' + format_double(r.b_cp) + ',' + format_double(r.h_q) + ',' +
         format_double(r.strong) + ',' + opt(r.multi) + ',' + opt(r.min_upper) + ',' +
         format_double(r.c) + ',' + format_double(r.c2);
}

}  // namespace eurlab
