// eur-lab: run experiment suites, summarize and replay their records.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eurlab/asymptotics.hpp"
#include "eurlab/error.hpp"
#include "eurlab/experiments.hpp"
#include "eurlab/haar_sampler.hpp"
#include "eurlab/submatrix_search.hpp"
#include "eurlab/text.hpp"
#include "eurlab/uncertainty_bounds.hpp"

namespace fs = std::filesystem;
using namespace eurlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerdict = 2;

std::string default_out() {
  const char* env = std::getenv("EUR_LAB_OUT");
  return env ? std::string(env) : std::string();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stoul(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw ConfigError("bad --dims entry '" + piece + "'");
    }
  }
  return dims;
}

fs::path records_path(const std::string& where) {
  fs::path p(where);
  return fs::is_directory(p) ? p / "records.csv" : p;
}

int cmd_run(ExperimentConfig cfg, bool plots) {
  if (cfg.output_dir.empty()) cfg.output_dir = default_out();
  if (cfg.output_dir.empty()) throw ConfigError("--out is required (or set EUR_LAB_OUT)");
  const auto records = run_experiment(cfg);
  if (plots) emit_plots(records, cfg.output_dir);
  std::cout << records.size() << " records written to " << cfg.output_dir << "/records.csv\n";
  return kExitOk;
}

int cmd_summarize(std::string dir) {
  if (dir.empty()) dir = default_out();
  if (dir.empty()) throw ConfigError("summarize needs a directory (or EUR_LAB_OUT)");
  const auto records = load_records(records_path(dir).string());
  const Summary summary = summarize(records);
  const fs::path out_dir = fs::is_directory(dir) ? fs::path(dir) : fs::path(dir).parent_path();
  std::ofstream out(out_dir / "summary.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write summary.json");
  out << summary.to_json();
  for (const auto& r : summary.rows) {
    std::cout << r.experiment << " N=" << r.dim << " L=" << r.measurements << ' ' << r.statistic
              << " mean=" << format_double(r.mean) << " se=" << format_double(r.standard_error);
    if (r.theory) std::cout << " theory=" << format_double(*r.theory);
    std::cout << ' ' << r.verdict << '\n';
  }
  return summary.any_failed() ? kExitVerdict : kExitOk;
}

// --record accepts "<csv or dir>#<row>" or a bare row number resolved
// against --in / EUR_LAB_OUT. Rows count data lines from 1.
int cmd_replay(const std::string& record, std::string in_dir) {
  std::string where = in_dir.empty() ? default_out() : in_dir;
  std::string row_text = record;
  if (const auto hash = record.rfind('#'); hash != std::string::npos) {
    where = record.substr(0, hash);
    row_text = record.substr(hash + 1);
  }
  if (where.empty()) where = ".";
  std::size_t row = 0;
  try {
    row = std::stoul(row_text);
  } catch (const std::exception&) {
    throw ConfigError("bad record id '" + record + "'");
  }
  const fs::path csv = records_path(where);
  const auto records = load_records(csv.string());
  if (row < 1 || row > records.size()) {
    throw ConfigError("record " + std::to_string(row) + " out of range (1.." +
                      std::to_string(records.size()) + ")");
  }
  const ExperimentRecord& target = records[row - 1];

  ExperimentConfig cfg;
  const fs::path run_json = csv.parent_path() / "run.json";
  if (fs::exists(run_json)) cfg = config_from_json(read_file(run_json));
  cfg.experiment = target.experiment;
  const SeedPath sp = parse_seed_path(target.seed_path);
  if (sp.suite_id != find_suite(target.experiment).id) {
    throw ConfigError("seed path does not belong to " + target.experiment);
  }
  cfg.seed = sp.seed;
  cfg.measurements = sp.measurements;

  const auto again = run_trial(cfg, sp.dim, sp.trial);
  for (const auto& r : again) {
    if (r.statistic != target.statistic) continue;
    const bool same = format_double(r.value) == format_double(target.value) &&
                      r.certified == target.certified;
    std::cout << target.experiment << ' ' << target.seed_path << ' ' << target.statistic
              << " recorded=" << format_double(target.value)
              << " replayed=" << format_double(r.value) << (same ? " match\n" : " MISMATCH\n");
    return same ? kExitOk : kExitVerdict;
  }
  std::cout << "statistic " << target.statistic << " not produced on replay\n";
  return kExitVerdict;
}

int cmd_constants() {
  std::cout << constants_json();
  return kExitOk;
}

int cmd_sample(std::size_t n, std::uint64_t seed, const std::string& out) {
  const ComplexMatrix u = sample_haar_unitary(RngStream{seed, {}}, n);
  if (out.empty()) {
    write_matrix(std::cout, u);
  } else {
    save_matrix(out, u);
  }
  return kExitOk;
}

SearchBudget budget_from(const ExperimentConfig& cfg) {
  SearchBudget b;
  b.max_enumerations = cfg.enum_budget;
  b.restarts = cfg.restarts.value_or(b.restarts);
  b.max_swaps = cfg.max_swaps.value_or(b.max_swaps);
  b.rng = RngStream{cfg.seed, {}};
  return b;
}

int cmd_profile(const std::string& path, const ExperimentConfig& cfg) {
  const NormProfile s = s_profile(load_matrix(path), budget_from(cfg));
  write_profile_csv(std::cout, s);
  return kExitOk;
}

int cmd_bounds(const std::string& path, const ExperimentConfig& cfg) {
  const ComplexMatrix u = load_matrix(path);
  const BoundReport rep = make_bound_report(u, s_profile(u, budget_from(cfg)));
  std::cout << bound_report_csv_header() << '\n' << bound_report_csv_row(rep) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic uncertainty experiments on Haar-random unitaries"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::string dims_text;
  bool plots = false;
  auto* run = app.add_subcommand("run", "run an experiment suite");
  run->add_option("--experiment", cfg.experiment, "suite name")->required();
  run->add_option("--dims", dims_text, "comma-separated dimensions");
  run->add_option("--trials", cfg.trials, "trials per dimension (0: suite default)");
  run->add_option("--seed", cfg.seed, "root seed");
  run->add_option("--L", cfg.measurements, "number of measurements");
  run->add_option("--enum-budget", cfg.enum_budget, "max (I, J) pairs enumerated exhaustively");
  run->add_flag("--allow-heuristic", cfg.allow_heuristic, "accept uncertified profiles");
  run->add_option("--workers", cfg.workers, "worker threads (0: all cores)");
  run->add_option("--restarts", cfg.restarts, "local-search restarts");
  run->add_option("--max-swaps", cfg.max_swaps, "interchange steps per restart");
  run->add_option("--minimizer-restarts", cfg.minimizer_restarts, "random minimizer starts");
  run->add_option("--out", cfg.output_dir, "output directory (default $EUR_LAB_OUT)");
  run->add_flag("--plots", plots, "also write gnuplot data and scripts");

  std::string summarize_dir;
  auto* summarize_cmd = app.add_subcommand("summarize", "aggregate records.csv into summary.json");
  summarize_cmd->add_option("dir", summarize_dir, "run directory or records.csv");

  std::string record;
  std::string replay_dir;
  auto* replay = app.add_subcommand("replay", "regenerate one record from its seed path");
  replay->add_option("--record", record, "<dir or csv>#<row> or a row number")->required();
  replay->add_option("--in", replay_dir, "run directory for bare row numbers");

  auto* constants = app.add_subcommand("constants", "print the constants table as JSON");

  std::size_t sample_n = 4;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "draw one Haar unitary");
  sample->add_option("--n", sample_n, "dimension")->required();
  sample->add_option("--seed", cfg.seed, "seed");
  sample->add_option("--out", sample_out, "matrix file (default stdout)");

  std::string matrix_path;
  auto* profile = app.add_subcommand("profile", "s-profile of a matrix file as CSV");
  profile->add_option("--matrix", matrix_path, "matrix file")->required();
  profile->add_option("--enum-budget", cfg.enum_budget, "exhaustive enumeration budget");
  profile->add_option("--restarts", cfg.restarts, "local-search restarts");
  profile->add_option("--seed", cfg.seed, "seed for local search");

  auto* bounds = app.add_subcommand("bounds", "all lower bounds for a matrix file");
  bounds->add_option("--matrix", matrix_path, "matrix file")->required();
  bounds->add_option("--enum-budget", cfg.enum_budget, "exhaustive enumeration budget");
  bounds->add_option("--restarts", cfg.restarts, "local-search restarts");
  bounds->add_option("--seed", cfg.seed, "seed for local search");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      cfg.dims = parse_dims(dims_text);
      return cmd_run(cfg, plots);
    }
    if (*summarize_cmd) return cmd_summarize(summarize_dir);
    if (*replay) return cmd_replay(record, replay_dir);
    if (*constants) return cmd_constants();
    if (*sample) return cmd_sample(sample_n, cfg.seed, sample_out);
    if (*profile) return cmd_profile(matrix_path, cfg);
    if (*bounds) return cmd_bounds(matrix_path, cfg);
  } catch (const std::exception& e) {
    std::cerr << "eur-lab: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
