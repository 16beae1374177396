#include "eurlab/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

#include "eurlab/error.hpp"

namespace eurlab {

namespace {

constexpr std::size_t kHarmonicDirectLimit = 1'000'000;

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

void require_range(bool ok, const char* what) {
  if (!ok) throw InvalidInput(what);
}

double log_ratio_shape(double fraction) {
  // fraction * (1 + ln(2 / fraction))
  return fraction * (1.0 + std::log(2.0 / fraction));
}

}  // namespace

const std::vector<NamedConstant>& constants_table() {
  static const std::vector<NamedConstant> table = {
      {"C_f", constants::kEnvelope, "uniform envelope on s_k",
       "prefactor in sqrt(C_f (k+1)/N (1 + ln(2N/(k+1))))"},
      {"C_a", constants::kEntropyGap, "entropy-sum lower bound ln N - C_a",
       "additive gap of the generic two-measurement bound"},
      {"A_limit", constants::kGapIntegral, "limsup of A_N in the r-vector construction",
       "value of the gap integral over (0, 0.052)"},
      {"A_upper_limit", constants::kGapIntegralLimit, "gap integral upper limit",
       "integration cutoff just above x*"},
      {"x_star", constants::kCriticalFraction, "limit of N_1/N",
       "root of C_f x (1 + ln(2/x)) = 1"},
      {"D", constants::kSplitTarget, "per-split expectation target",
       "prefactor proven for E||U^(n,m)||"},
      {"D_objective_min", constants::kSplitObjectiveMin, "epsilon optimization",
       "minimum over eps of the split objective at D"},
      {"eps_opt", constants::kSplitObjectiveArgmin, "epsilon optimization",
       "argmin of the split objective"},
      {"C_0", constants::kSandwichUpperOffset, "sandwich upper edge ln N - C_0",
       "1 - gamma = digamma(2), rounded"},
      {"gamma", constants::kEulerGamma, "harmonic numbers and digamma",
       "Euler-Mascheroni constant"},
  };
  return table;
}

std::string constants_json() {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : constants_table()) {
    arr.push_back({{"name", c.name}, {"value", c.value}, {"location", c.location},
                   {"meaning", c.meaning}});
  }
  return arr.dump(2);
}

double harmonic_asymptotic(std::size_t m) {
  require_range(m >= 1, "harmonic number index must be positive");
  const double x = static_cast<double>(m);
  return std::log(x) + constants::kEulerGamma + 0.5 / x - 1.0 / (12.0 * x * x);
}

double harmonic_number(std::size_t m) {
  require_range(m >= 1, "harmonic number index must be positive");
  if (m > kHarmonicDirectLimit) return harmonic_asymptotic(m);
  CompensatedSum s;
  for (std::size_t j = m; j >= 1; --j) s.add(1.0 / static_cast<double>(j));
  return s.value();
}

double expected_subvector_norm_sq(std::size_t n, std::size_t dim) {
  require_range(n >= 1 && n <= dim, "need 1 <= n <= N");
  const double ratio = static_cast<double>(n) / static_cast<double>(dim);
  if (n == dim) return 1.0;
  return ratio * (1.0 + harmonic_number(dim) - harmonic_number(n));
}

double expected_ordered_weight(std::size_t m, std::size_t dim) {
  require_range(m >= 1 && m <= dim, "need 1 <= m <= N");
  const double h_prev = m == 1 ? 0.0 : harmonic_number(m - 1);
  return (harmonic_number(dim) - h_prev) / static_cast<double>(dim);
}

double digamma(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) throw InvalidInput("digamma argument must be positive");
  double shift = 0.0;
  while (z < 10.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  // Bernoulli-number tail: -sum B_2k / (2k z^2k), k = 1..7.
  const double tail =
      inv2 * (-1.0 / 12.0 +
              inv2 * (1.0 / 120.0 +
                      inv2 * (-1.0 / 252.0 +
                              inv2 * (1.0 / 240.0 +
                                      inv2 * (-1.0 / 132.0 +
                                              inv2 * (691.0 / 32760.0 + inv2 * (-1.0 / 12.0)))))));
  return shift + std::log(z) - 0.5 * inv + tail;
}

double jones_mean_entropy(std::size_t dim) {
  require_range(dim >= 1, "dimension must be positive");
  return digamma(static_cast<double>(dim) + 1.0) - digamma(2.0);
}

double jiang_scale(std::size_t dim) { return fixed_block_scale(1, 1, dim); }

double fixed_block_scale(std::size_t n, std::size_t m, std::size_t dim) {
  require_range(dim >= 2 && n >= 1 && m >= 1 && n <= dim && m <= dim, "invalid block size");
  const double big_n = static_cast<double>(dim);
  return std::sqrt(static_cast<double>(n + m) * std::log(big_n) / big_n);
}

double one_column_scale(std::size_t n, std::size_t dim) {
  require_range(dim >= 2 && n >= 1 && n <= dim, "need 1 <= n <= N, N >= 2");
  const double big_n = static_cast<double>(dim);
  const double x = static_cast<double>(n);
  return std::sqrt((x + 1.0) / big_n * (1.0 + std::log(big_n / x)));
}

double split_norm_target(std::size_t k, std::size_t dim, double prefactor) {
  require_range(k >= 1 && k <= dim, "need 1 <= k <= N");
  require_range(prefactor > 0.0, "prefactor must be positive");
  const double f = static_cast<double>(k + 1) / static_cast<double>(dim);
  return std::sqrt(prefactor * f * (1.0 + std::log(2.0 / f)));
}

double sk_envelope(std::size_t k, std::size_t dim) {
  return split_norm_target(k, dim, constants::kEnvelope);
}

double split_expectation_bound(std::size_t n, std::size_t m, std::size_t dim, double eps) {
  require_range(n >= 1 && m >= 1 && n <= dim && m <= dim, "invalid block size");
  require_range(eps > 0.0 && eps < 1.0 / 3.0, "eps must lie in (0, 1/3)");
  const double big_n = static_cast<double>(dim);
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const double e = std::exp(1.0);
  const double inner = dm * std::log(e * big_n / dm) + dn * std::log(e * big_n / dn) +
                       2.0 * (dn + dm) * std::log(1.0 + 2.0 / eps);
  return std::sqrt(2.0 / (2.0 * big_n - 1.0)) * std::sqrt(inner) / (1.0 - 2.0 * eps - eps * eps);
}

double critical_fraction() {
  double lo = 1e-12;
  double hi = 1.0;
  // C_f x (1 + ln(2/x)) is increasing on (0, 1): derivative C_f ln(2/x) > 0.
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (constants::kEnvelope * log_ratio_shape(mid) < 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double gap_density(double x) {
  require_range(x > 0.0 && x < 2.0, "gap density defined on (0, 2)");
  const double e = std::exp(1.0);
  return std::sqrt(constants::kEnvelope) * std::log(2.0 / x) /
         (2.0 * std::sqrt(x * std::log(2.0 * e / x)));
}

double gap_integrand(double x) {
  const double g = gap_density(x);
  return g * std::log(g);
}

double gap_integral(double tolerance) {
  require_range(tolerance > 0.0, "tolerance must be positive");
  const double upper = std::sqrt(constants::kGapIntegralLimit);
  auto f = [](double t) { return t <= 0.0 ? 0.0 : 2.0 * t * gap_integrand(t * t); };
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, upper, 20,
                                                                        tolerance, &error);
}

double split_objective(double eps, double target) {
  require_range(eps > 0.0 && eps < 1.0 / 3.0, "eps must lie in (0, 1/3)");
  require_range(target > 0.0, "target must be positive");
  const double shrink = 1.0 - 2.0 * eps - eps * eps;
  return (1.0 + 2.0 * std::log(1.0 + 2.0 / eps) / std::log(2.0 * std::exp(1.0) * target)) /
         (shrink * shrink);
}

ObjectiveMinimum minimize_split_objective(double target) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 1e-9;
  double b = 1.0 / 3.0 - 1e-12;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = split_objective(c, target);
  double fd = split_objective(d, target);
  while (b - a > 1e-11) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = split_objective(c, target);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = split_objective(d, target);
    }
  }
  const double eps = 0.5 * (a + b);
  return {eps, split_objective(eps, target)};
}

EnvelopeVector r_vector(std::size_t dim) {
  require_range(dim >= 4, "r-vector needs N >= 4");
  const double big_n = static_cast<double>(dim);
  const double root_cf = std::sqrt(constants::kEnvelope);
  const double first = std::sqrt(constants::kEnvelope * (2.0 / big_n) * (1.0 + std::log(big_n)));
  if (first >= 1.0) {
    // The envelope is vacuous at this dimension: only the trivial vector works.
    return {ProbVector({1.0}, 1.0), 0};
  }
  std::vector<double> r{first};
  CompensatedSum running;
  running.add(first);
  std::size_t cutoff = 1;
  for (std::size_t i = 2; i <= dim; ++i) {
    const double f = static_cast<double>(i) / big_n;
    const double log_term = std::log(2.0 / f);
    const double ri = root_cf * log_term / (2.0 * std::sqrt(f * (log_term + 1.0))) / big_n;
    if (running.value() + ri > 1.0) break;
    running.add(ri);
    r.push_back(ri);
    cutoff = i;
  }
  r.push_back(1.0 - running.value());
  return {ProbVector(std::move(r), 1.0), cutoff};
}

double multi_envelope(std::size_t k, std::size_t dim, std::size_t measurements, double c_g) {
  require_range(measurements >= 2, "need L >= 2");
  require_range(dim >= 1 && k < dim * measurements, "need 0 <= k <= LN - 1");
  require_range(c_g >= 0.0 && std::isfinite(c_g), "c_g must be finite and nonnegative");
  const double f = static_cast<double>(k + 1) / static_cast<double>(dim);
  return 1.0 + std::sqrt(c_g * f *
                         std::log(std::exp(1.0) * static_cast<double>(dim * measurements) /
                                  static_cast<double>(k + 1)));
}

}  // namespace eurlab
