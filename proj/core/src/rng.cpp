#include "eurlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eurlab/error.hpp"

namespace eurlab {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kPathSalt = 0xD1B54A32D192ED03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

RngStream RngStream::child(std::uint64_t label) const {
  RngStream out = *this;
  out.path.push_back(label);
  return out;
}

RngStream RngStream::child(std::initializer_list<std::uint64_t> labels) const {
  RngStream out = *this;
  out.path.insert(out.path.end(), labels.begin(), labels.end());
  return out;
}

std::string RngStream::to_string() const {
  std::string s = std::to_string(root_seed);
  for (auto p : path) {
    s += '/';
    s += std::to_string(p);
  }
  return s;
}

StreamEngine::StreamEngine(const RngStream& stream) {
  std::uint64_t k = mix64(stream.root_seed + kGolden);
  for (std::uint64_t label : stream.path) {
    k = mix64(k ^ mix64(label + kPathSalt));
  }
  key_ = k;
}

StreamEngine::result_type StreamEngine::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double StreamEngine::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::uint64_t StreamEngine::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw InvalidInput("uniform_index bound must be positive");
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = max() - (max() % bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = (*this)();
    if (x <= limit) return x % bound;
  }
}

double StreamEngine::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * factor;
  has_spare_ = true;
  return u * factor;
}

std::vector<std::size_t> random_subset(StreamEngine& engine, std::size_t n, std::size_t k) {
  if (k > n) throw InvalidInput("subset larger than universe");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(engine.uniform_index(n - i));
    std::swap(perm[i], perm[j]);
  }
  perm.resize(k);
  std::sort(perm.begin(), perm.end());
  return perm;
}

}  // namespace eurlab
