#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "eurlab/error.hpp"
#include "eurlab/experiments.hpp"
#include "eurlab/text.hpp"

namespace eurlab {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidInput("records line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return value;
}

}  // namespace

void write_records_header(std::ostream& out) { out << kRecordsHeader << '\n'; }

void write_record(std::ostream& out, const ExperimentRecord& r) {
  out << r.experiment << ',' << r.dim << ',' << r.measurements << ',' << r.trial << ','
      << r.seed_path << ',' << r.statistic << ',' << format_double(r.value) << ','
      << (r.certified ? 1 : 0) << ',' << format_double(r.wall_time_ms) << '\n';
}

std::vector<ExperimentRecord> read_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw InvalidInput("records.csv header mismatch");
  }
  std::vector<ExperimentRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) {
      throw InvalidInput("records line " + std::to_string(line_no) + ": expected 9 fields");
    }
    ExperimentRecord r;
    r.experiment = f[0];
    r.dim = parse_number<std::size_t>(f[1], line_no);
    r.measurements = parse_number<std::size_t>(f[2], line_no);
    r.trial = parse_number<std::size_t>(f[3], line_no);
    r.seed_path = f[4];
    r.statistic = f[5];
    r.value = parse_number<double>(f[6], line_no);
    r.certified = parse_number<int>(f[7], line_no) != 0;
    r.wall_time_ms = parse_number<double>(f[8], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> load_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_records(in);
}

}  // namespace eurlab
