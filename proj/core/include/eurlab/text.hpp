#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eurlab {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Indices joined with ';' (CSV witness columns).
std::string join_indices(const std::vector<std::size_t>& indices);
std::vector<std::size_t> split_indices(std::string_view text);

}  // namespace eurlab
