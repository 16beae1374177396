#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace eurlab {

// Name of the Gaussian variate method; written into run headers so archived
// seeds remain interpretable.
inline constexpr const char* kGaussianMethod = "marsaglia-polar/splitmix64-counter";

/// Descriptor of an independent random stream: a root seed plus a path of
/// 64-bit labels (experiment id, trial index, draw index, ...). The stream is
/// derived by hashing, so the same descriptor yields the same numbers on every
/// platform and regardless of the order in which streams are consumed.
struct RngStream {
  std::uint64_t root_seed = 0;
  std::vector<std::uint64_t> path;

  RngStream child(std::uint64_t label) const;
  RngStream child(std::initializer_list<std::uint64_t> labels) const;
  std::string to_string() const;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

std::uint64_t mix64(std::uint64_t x);

/// Counter-based generator over a stream key. Satisfies
/// UniformRandomBitGenerator, but callers should prefer the members below,
/// whose output does not depend on the standard library implementation.
class StreamEngine {
 public:
  using result_type = std::uint64_t;

  explicit StreamEngine(const RngStream& stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on {0, ..., bound-1}; bound > 0.
  std::uint64_t uniform_index(std::uint64_t bound);
  /// Standard normal.
  double gaussian();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// First k entries of a uniformly random permutation of {0, ..., n-1}, sorted.
std::vector<std::size_t> random_subset(StreamEngine& engine, std::size_t n, std::size_t k);

}  // namespace eurlab
