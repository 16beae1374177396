#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eurlab {

/// Bad configuration or command-line usage (distinct from InvalidInput,
/// which flags numerical preconditions).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string experiment;
  std::vector<std::size_t> dims;  // empty: suite default
  std::size_t measurements = 2;   // L
  std::size_t trials = 0;         // 0: suite default
  std::uint64_t seed = 42;
  std::uint64_t enum_budget = 2'000'000;
  std::optional<std::size_t> restarts;   // submatrix local-search restarts; unset: suite default
  std::optional<std::size_t> max_swaps;  // interchange steps per restart; unset: suite default
  std::size_t minimizer_restarts = 32;
  bool allow_heuristic = false;
  std::size_t workers = 0;  // 0: hardware concurrency
  std::string output_dir;   // empty: keep records in memory only

  /// Fills suite defaults and checks invariants; throws ConfigError.
  ExperimentConfig resolved() const;
};

struct ExperimentRecord {
  std::string experiment;
  std::size_t dim = 0;
  std::size_t measurements = 0;
  std::size_t trial = 0;
  std::string seed_path;
  std::string statistic;
  double value = 0.0;
  bool certified = true;
  double wall_time_ms = 0.0;
};

struct SuiteInfo {
  std::string name;
  std::uint64_t id = 0;
  std::string description;
  std::vector<std::size_t> default_dims;
  std::size_t default_trials = 0;
  bool needs_exact = false;
  std::size_t default_restarts = 64;
  std::size_t default_max_swaps = 500;
};

const std::vector<SuiteInfo>& registered_suites();
/// Throws ConfigError for unknown names.
const SuiteInfo& find_suite(std::string_view name);

/// Runs every (N, trial) task of the configured suite. Records come back
/// ordered by (N, trial, statistic order) whatever the worker count; when
/// output_dir is set, run.json and records.csv are written there as tasks
/// complete.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

/// Regenerates one trial in isolation.
std::vector<ExperimentRecord> run_trial(const ExperimentConfig& cfg, std::size_t dim,
                                        std::size_t trial);

std::string make_seed_path(std::uint64_t seed, std::uint64_t suite_id, std::size_t dim,
                           std::size_t measurements, std::size_t trial);

struct SeedPath {
  std::uint64_t seed = 0;
  std::uint64_t suite_id = 0;
  std::size_t dim = 0;
  std::size_t measurements = 0;
  std::size_t trial = 0;
};
SeedPath parse_seed_path(std::string_view text);

struct SummaryRow {
  std::string experiment;
  std::size_t dim = 0;
  std::size_t measurements = 0;
  std::string statistic;
  std::size_t count = 0;
  double mean = 0.0;
  double standard_error = 0.0;
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
  bool certified = true;
  std::optional<double> theory;
  std::string rule;     // how the verdict is decided
  std::string verdict;  // "pass", "fail" or "report"
};

struct Summary {
  std::vector<SummaryRow> rows;

  bool any_failed() const;
  std::string to_json() const;
};

/// Per (experiment, N, L, statistic) aggregates with theory values and verdicts.
Summary summarize(std::span<const ExperimentRecord> records);

/// Writes <experiment>.dat and <experiment>.gp (gnuplot) per experiment
/// present in `records`; returns the paths written.
std::vector<std::string> emit_plots(std::span<const ExperimentRecord> records,
                                    const std::string& output_dir);

// records.csv
inline constexpr std::string_view kRecordsHeader =
    "experiment,N,L,trial,seed_path,statistic,value,certified,wall_time_ms";
void write_records_header(std::ostream& out);
void write_record(std::ostream& out, const ExperimentRecord& r);
std::vector<ExperimentRecord> read_records(std::istream& in);
std::vector<ExperimentRecord> load_records(const std::string& path);

// run.json
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

}  // namespace eurlab
