#include "eurlab/text.hpp"

#include <charconv>
#include <stdexcept>

#include "eurlab/error.hpp"

namespace eurlab {

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

std::string join_indices(const std::vector<std::size_t>& indices) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(indices[i]);
  }
  return out;
}

std::vector<std::size_t> split_indices(std::string_view text) {
  std::vector<std::size_t> out;
  while (!text.empty()) {
    const auto pos = text.find(';');
    const auto token = text.substr(0, pos);
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw InvalidInput("malformed index list");
    }
    out.push_back(value);
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

}  // namespace eurlab
