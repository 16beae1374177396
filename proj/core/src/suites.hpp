#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eurlab/experiments.hpp"
#include "eurlab/rng.hpp"

namespace eurlab::detail {

struct Statistic {
  std::string name;
  double value = 0.0;
  bool certified = true;
};

struct TrialContext {
  const ExperimentConfig& cfg;
  std::size_t dim;
  std::size_t trial;
  RngStream stream;
};

std::vector<Statistic> run_suite_trial(const SuiteInfo& suite, const TrialContext& ctx);

/// Empty when the budget yields exact results at this N; otherwise the reason.
std::optional<std::string> exactness_problem(const SuiteInfo& suite, const ExperimentConfig& cfg,
                                             std::size_t dim);

struct TheoryRule {
  std::optional<double> theory;
  // "within_3se", "median_within:<tol>", "median_below:<tol>", "max_below:<tol>",
  // "mean_at_least", "zero", "report"
  std::string rule = "report";
};

TheoryRule theory_for(std::string_view experiment, std::size_t dim, std::size_t measurements,
                      std::string_view statistic);

/// Numeric parameter after the last '=' in a statistic name, if any.
std::optional<double> statistic_parameter(std::string_view statistic);

}  // namespace eurlab::detail
