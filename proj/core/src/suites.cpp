#include "suites.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "eurlab/asymptotics.hpp"
#include "eurlab/haar_sampler.hpp"
#include "eurlab/state_minimizer.hpp"
#include "eurlab/submatrix_search.hpp"
#include "eurlab/uncertainty_bounds.hpp"

namespace eurlab {

namespace {

// Largest N for which profile-based suites run without --allow-heuristic.
constexpr std::size_t kExactProfileDimLimit = 6;
constexpr double kBoundSlack = 1e-6;
// Heuristic s-profiles run about N^2/2 block searches, so suites that build
// them at large N default to the greedy start plus the witnesses carried over
// from k-1, with no interchange polish. Extra random starts rarely move s_k.
constexpr std::size_t kProfileRestarts = 1;
// c_g checked by the multi-envelope suite.
constexpr double kReferenceCg = 10.0;

using detail::Statistic;
using detail::TrialContext;

SearchBudget search_budget(const TrialContext& ctx) {
  SearchBudget b;
  b.max_enumerations = ctx.cfg.enum_budget;
  b.restarts = ctx.cfg.restarts.value_or(b.restarts);
  b.max_swaps = ctx.cfg.max_swaps.value_or(b.max_swaps);
  b.rng = ctx.stream.child(100);
  return b;
}

MinimizeOptions minimizer_options(const TrialContext& ctx) {
  MinimizeOptions o;
  o.restarts = ctx.cfg.minimizer_restarts;
  o.rng = ctx.stream.child(200);
  return o;
}

std::string with_param(std::string_view base, std::size_t p) {
  return std::string(base) + "=" + std::to_string(p);
}

std::vector<std::size_t> harmonic_sizes(std::size_t dim) {
  std::vector<std::size_t> sizes;
  for (std::size_t n : {std::size_t{1}, std::size_t{4}, std::size_t{16}, dim - 1}) {
    if (n >= 1 && n <= dim) sizes.push_back(n);
  }
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  return sizes;
}

struct BlockShape {
  std::size_t n;
  std::size_t m;
};

constexpr BlockShape kFixedBlocks[] = {{1, 1}, {1, 2}, {2, 2}, {2, 3}};
constexpr BlockShape kConcentrationBlock{2, 2};

std::string block_name(const BlockShape& b) {
  return "norm_n" + std::to_string(b.n) + "_m=" + std::to_string(b.m);
}

// Squared moduli of each column sorted in decreasing order, prefix-summed.
Eigen::MatrixXd column_prefix_mass(const ComplexMatrix& u) {
  Eigen::MatrixXd abs2 = u.eigen().cwiseAbs2();
  for (Eigen::Index j = 0; j < abs2.cols(); ++j) {
    std::sort(abs2.col(j).data(), abs2.col(j).data() + abs2.rows(), std::greater<>());
    for (Eigen::Index i = 1; i < abs2.rows(); ++i) abs2(i, j) += abs2(i - 1, j);
  }
  return abs2;
}

std::vector<Statistic> trial_mu(const TrialContext& ctx) {
  const ComplexMatrix u = sample_haar_unitary(ctx.stream.child(0), ctx.dim);
  return {{"b_mu", maassen_uffink(u), true}};
}

std::vector<Statistic> trial_cp(const TrialContext& ctx) {
  const ComplexMatrix u = sample_haar_unitary(ctx.stream.child(0), ctx.dim);
  return {{"b_cp", coles_piani(u), true}};
}

std::vector<Statistic> trial_hq(const TrialContext& ctx) {
  const ComplexMatrix u = sample_haar_unitary(ctx.stream.child(0), ctx.dim);
  const NormProfile s = s_profile(u, search_budget(ctx));
  return {{"h_q", tensor_majorization_bound(r_profile(s)), s.certified()}};
}

std::vector<Statistic> trial_harmonic(const TrialContext& ctx) {
  const ComplexMatrix u = sample_haar_unitary(ctx.stream.child(0), ctx.dim);
  const Eigen::MatrixXd prefix = column_prefix_mass(u);
  std::vector<Statistic> out;
  for (std::size_t n : harmonic_sizes(ctx.dim)) {
    out.push_back({with_param("norm_sq_n", n), prefix(static_cast<Eigen::Index>(n - 1), 0), true});
  }
  return out;
}

std::vector<Statistic> trial_one_column(const TrialContext& ctx) {
  const ComplexMatrix u = sample_haar_unitary(ctx.stream.child(0), ctx.dim);
  const Eigen::MatrixXd prefix = column_prefix_mass(u);
  std::vector<Statistic> out;
  double ratio_min = INFINITY;
  double ratio_max = 0.0;
  for (std::size_t n = 1; n <= ctx.dim; ++n) {
    const double norm = std::sqrt(prefix.row(static_cast<Eigen::Index>(n - 1)).maxCoeff());
    const double ratio = norm / one_column_scale(n, ctx.dim);
    ratio_min = std::min(ratio_min, ratio);
    ratio_max = std::max(ratio_max, ratio);
    out.push_back({with_param("norm_n", n), norm, true});
  }
  out.push_back({"ratio_min", ratio_min, true});
  out.push_back({"ratio_max", ratio_max, true});
  out.push_back({"in_band", (ratio_min >= 0.8 && ratio_max <= 1.2) ? 1.0 : 0.0, true});
  return out;
}

std::vector<Statistic> trial_fixed_block(const TrialContext& ctx) {
  const ComplexMatrix u = sample_haar_unitary(ctx.stream.child(0), ctx.dim);
  const SearchBudget budget = search_budget(ctx);
  std::vector<Statistic> out;
  for (const auto& b : kFixedBlocks) {
    if (b.n > ctx.dim || b.m > ctx.dim) continue;
    const SearchResult r = max_submatrix_norm(u, b.n, b.m, budget);
    out.push_back({block_name(b), r.value, r.certified});
  }
  return out;
}

std::vector<Statistic> trial_sk_envelope(const TrialContext& ctx) {
  const ComplexMatrix u = sample_haar_unitary(ctx.stream.child(0), ctx.dim);
  const NormProfile s = s_profile(u, search_budget(ctx));
  std::vector<Statistic> out;
  double violations = 0.0;
  for (const auto& e : s.entries()) {
    out.push_back({with_param("s_k", e.k), e.value, e.cert == Certification::exact});
    if (e.value > sk_envelope(e.k, ctx.dim)) violations += 1.0;
  }
  out.push_back({"violations", violations, s.certified()});
  return out;
}

std::vector<Statistic> trial_bound_duel(const TrialContext& ctx) {
  const ComplexMatrix u = sample_haar_unitary(ctx.stream.child(0), ctx.dim);
  const NormProfile s = s_profile(u, search_budget(ctx));
  BoundReport rep = make_bound_report(u, s);
  const std::vector<ComplexMatrix> bases{ComplexMatrix::identity(ctx.dim), u};
  const MinimizeResult min = minimize_entropy_sum(bases, minimizer_options(ctx));
  rep.min_upper = min.value;
  const bool cert = s.certified();
  return {
      {"b_mu", rep.b_mu, true},
      {"b_cp", rep.b_cp, true},
      {"h_q", rep.h_q, cert},
      {"strong", rep.strong, cert},
      {"min_upper", min.value, true},
      {"gap", std::log(static_cast<double>(ctx.dim)) - min.value, true},
      {"violations", static_cast<double>(rep.violations().size()), cert},
  };
}

std::vector<Statistic> trial_multi(const TrialContext& ctx) {
  const std::size_t L = ctx.cfg.measurements;
  std::vector<ComplexMatrix> us;
  us.reserve(L);
  for (std::size_t i = 0; i < L; ++i) us.push_back(sample_haar_unitary(ctx.stream.child(i), ctx.dim));
  const NormProfile big_s = multi_measurement_profile(us, search_budget(ctx));
  const double bound = multi_measurement_bound(big_s);
  const MinimizeResult min = minimize_entropy_sum(us, minimizer_options(ctx));
  const double per = 1.0 / static_cast<double>(L);
  const bool cert = big_s.certified();
  const double violations = bound > min.value + kBoundSlack ? 1.0 : 0.0;
  return {
      {"multi_bound", bound, cert},
      {"min_upper", min.value, true},
      {"avg_entropy", min.value * per, true},
      {"bound_per_measurement", bound * per, cert},
      {"violations", violations, cert},
  };
}

// Smallest c_g for which 1 + sqrt(c_g ((k+1)/N) ln(eNL/(k+1))) covers
// sqrt(S_k) at every k of this draw.
std::vector<Statistic> trial_multi_envelope(const TrialContext& ctx) {
  const std::size_t L = ctx.cfg.measurements;
  std::vector<ComplexMatrix> us;
  us.reserve(L);
  for (std::size_t i = 0; i < L; ++i) us.push_back(sample_haar_unitary(ctx.stream.child(i), ctx.dim));
  const NormProfile big_s = multi_measurement_profile(us, search_budget(ctx));
  const double big_n = static_cast<double>(ctx.dim);
  double needed = 0.0;
  bool covered = true;
  for (const auto& e : big_s.entries()) {
    const double excess = std::sqrt(e.value) - 1.0;
    if (excess > 0.0) {
      const double kk = static_cast<double>(e.k + 1);
      const double scale = kk / big_n * std::log(std::exp(1.0) * big_n * static_cast<double>(L) / kk);
      needed = std::max(needed, excess * excess / scale);
    }
    covered = covered && std::sqrt(e.value) <= multi_envelope(e.k, ctx.dim, L, kReferenceCg);
  }
  return {
      {"c_g_needed", needed, big_s.certified()},
      {"covered", covered ? 1.0 : 0.0, big_s.certified()},
  };
}

std::vector<Statistic> trial_jones(const TrialContext& ctx) {
  const PureState psi = sample_pure_state(ctx.stream.child(0), ctx.dim);
  const std::vector<ComplexMatrix> basis{ComplexMatrix::identity(ctx.dim)};
  return {{"entropy", entropy_sum(basis, psi), true}};
}

std::vector<Statistic> trial_concentration(const TrialContext& ctx) {
  const ComplexMatrix u = sample_haar_unitary(ctx.stream.child(0), ctx.dim);
  const SearchResult r =
      max_submatrix_norm(u, kConcentrationBlock.n, kConcentrationBlock.m, search_budget(ctx));
  return {{"block_norm", r.value, r.certified}};
}

double hq_ceiling(std::size_t dim) {
  const double h14 = 0.25 * std::log(4.0) + 0.75 * std::log(4.0 / 3.0);
  return 0.75 * std::log(static_cast<double>(dim) - 1.0) + h14;
}

bool profile_suite(std::string_view name) {
  return name == "hq-ceiling" || name == "bound-duel" || name == "multi-measurement";
}

}  // namespace

const std::vector<SuiteInfo>& registered_suites() {
  // Ids are part of every seed path; never renumber.
  static const std::vector<SuiteInfo> suites = {
      {"mu-asymptotics", 1, "Maassen-Uffink bound vs ln N - ln ln N - ln 2", {256, 1024}, 200, false},
      {"cp-asymptotics", 2, "Coles-Piani bound vs ln N - ln ln N - (1/2) ln 2", {256, 1024}, 200, false},
      {"hq-ceiling", 3, "H(Q) vs (3/4) ln(N-1) + H(1/4, 3/4)", {4, 5, 6}, 200, true,
       kProfileRestarts, 0},
      {"harmonic", 4, "squared n-subvector norms of a Haar column vs (n/N)(1 + H_N - H_n)", {64}, 10000, false},
      {"one-column-law", 5, "||U^(n,1)|| vs sqrt(((n+1)/N)(1 + ln(N/n)))", {256}, 100, false},
      {"fixed-block-law", 6, "||U^(n,m)|| for small n, m vs sqrt((n+m) ln N / N)", {8, 16, 24}, 50, true},
      {"sk-envelope", 7, "s-profile vs sqrt(4.18 ((k+1)/N)(1 + ln(2N/(k+1))))", {64}, 100, false,
       kProfileRestarts, 0},
      {"bound-duel", 8, "all lower bounds vs minimizer upper value", {3, 4, 5, 6}, 200, true},
      {"multi-measurement", 9, "S-profile bound vs minimizer, per-measurement average", {3, 4}, 50, true},
      {"jones", 10, "mean entropy of random states vs Psi(N+1) - Psi(2)", {16, 64}, 10000, false},
      {"concentration", 11, "spread of ||U^(2,2)|| vs 2 exp(-N t^2 / 12)", {16, 32}, 200, true},
      {"multi-envelope", 12, "c_g needed for 1 + sqrt(c_g ((k+1)/N) ln(eNL/(k+1))) to cover sqrt(S_k)",
       {32}, 100, false, kProfileRestarts, 0},
  };
  return suites;
}

const SuiteInfo& find_suite(std::string_view name) {
  for (const auto& s : registered_suites()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

namespace detail {

std::vector<Statistic> run_suite_trial(const SuiteInfo& suite, const TrialContext& ctx) {
  const std::string& n = suite.name;
  if (n == "mu-asymptotics") return trial_mu(ctx);
  if (n == "cp-asymptotics") return trial_cp(ctx);
  if (n == "hq-ceiling") return trial_hq(ctx);
  if (n == "harmonic") return trial_harmonic(ctx);
  if (n == "one-column-law") return trial_one_column(ctx);
  if (n == "fixed-block-law") return trial_fixed_block(ctx);
  if (n == "sk-envelope") return trial_sk_envelope(ctx);
  if (n == "bound-duel") return trial_bound_duel(ctx);
  if (n == "multi-measurement") return trial_multi(ctx);
  if (n == "jones") return trial_jones(ctx);
  if (n == "concentration") return trial_concentration(ctx);
  if (n == "multi-envelope") return trial_multi_envelope(ctx);
  throw ConfigError("no trial runner for '" + n + "'");
}

std::optional<std::string> exactness_problem(const SuiteInfo& suite, const ExperimentConfig& cfg,
                                             std::size_t dim) {
  if (!suite.needs_exact) return std::nullopt;
  SearchBudget budget;
  budget.max_enumerations = cfg.enum_budget;
  const std::string where = suite.name + " at N=" + std::to_string(dim);
  if (profile_suite(suite.name) && dim > kExactProfileDimLimit) {
    return where + " needs exact profiles, which are pinned to N <= " +
           std::to_string(kExactProfileDimLimit);
  }
  if (suite.name == "hq-ceiling" || suite.name == "bound-duel") {
    if (!s_profile_is_exhaustive(dim, budget)) return where + ": enumeration budget too small";
  } else if (suite.name == "multi-measurement") {
    if (!multi_profile_is_exhaustive(dim, cfg.measurements, budget)) {
      return where + ": enumeration budget too small for L=" + std::to_string(cfg.measurements);
    }
  } else if (suite.name == "fixed-block-law") {
    for (const auto& b : kFixedBlocks) {
      if (b.n > dim || b.m > dim) continue;
      const auto a = binomial(dim, b.n);
      const auto c = binomial(dim, b.m);
      if (c != 0 && a > cfg.enum_budget / c) return where + ": enumeration budget too small";
    }
  } else if (suite.name == "concentration") {
    const auto a = binomial(dim, kConcentrationBlock.n);
    if (a != 0 && a > cfg.enum_budget / a) return where + ": enumeration budget too small";
  }
  return std::nullopt;
}

std::optional<double> statistic_parameter(std::string_view statistic) {
  const auto pos = statistic.rfind('=');
  if (pos == std::string_view::npos) return std::nullopt;
  const auto tail = statistic.substr(pos + 1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tail.data(), tail.data() + tail.size(), value);
  if (ec != std::errc{} || ptr != tail.data() + tail.size()) return std::nullopt;
  return value;
}

TheoryRule theory_for(std::string_view experiment, std::size_t dim, std::size_t measurements,
                      std::string_view statistic) {
  const double big_n = static_cast<double>(dim);
  const double ln_n = std::log(big_n);
  auto param = [&] { return static_cast<std::size_t>(*statistic_parameter(statistic)); };

  if (statistic == "violations") return {0.0, "zero"};
  if (experiment == "mu-asymptotics" && statistic == "b_mu" && dim >= 3) {
    return {ln_n - std::log(ln_n) - std::log(2.0), "median_within:0.35"};
  }
  if (experiment == "cp-asymptotics" && statistic == "b_cp" && dim >= 3) {
    return {ln_n - std::log(ln_n) - 0.5 * std::log(2.0), "median_below:0.35"};
  }
  if (experiment == "hq-ceiling" && statistic == "h_q" && dim >= 4) {
    return {hq_ceiling(dim), "max_below:1e-9"};
  }
  if (experiment == "harmonic" && statistic.starts_with("norm_sq_n=")) {
    return {expected_subvector_norm_sq(param(), dim), "within_3se"};
  }
  if (experiment == "one-column-law") {
    if (statistic.starts_with("norm_n=") && dim >= 2) return {one_column_scale(param(), dim), "report"};
    if (statistic == "in_band") return {0.9, "mean_at_least"};
  }
  if (experiment == "fixed-block-law" && statistic.starts_with("norm_n") && dim >= 2) {
    const auto n = static_cast<std::size_t>(statistic[6] - '0');
    return {fixed_block_scale(n, param(), dim), "report"};
  }
  if (experiment == "sk-envelope" && statistic.starts_with("s_k=")) {
    return {sk_envelope(param(), dim), "max_below:0"};
  }
  if (experiment == "bound-duel" && statistic == "gap") {
    return {constants::kEntropyGap, "report"};
  }
  if (experiment == "multi-measurement" && statistic == "bound_per_measurement") {
    const double l = static_cast<double>(measurements);
    return {(l - 1.0) / l * ln_n, "report"};
  }
  if (experiment == "multi-envelope" && statistic == "covered") {
    return {1.0, "report"};
  }
  if (experiment == "jones" && statistic == "entropy") {
    return {jones_mean_entropy(dim), "within_3se"};
  }
  if (experiment == "concentration" && statistic.starts_with("tail_t=")) {
    const double t = *statistic_parameter(statistic);
    return {std::min(1.0, 2.0 * std::exp(-big_n * t * t / 12.0)), "tail_below"};
  }
  return {std::nullopt, "report"};
}

}  // namespace detail

}  // namespace eurlab
