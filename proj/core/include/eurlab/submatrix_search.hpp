#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "eurlab/matrix_core.hpp"
#include "eurlab/rng.hpp"

namespace eurlab {

/// Limits for the maximal-submatrix-norm search. When the number of (I, J)
/// pairs is at most `max_enumerations` the search is exhaustive and exact;
/// otherwise a multi-restart local search runs and its result is only a
/// lower bound.
struct SearchBudget {
  std::uint64_t max_enumerations = 2'000'000;
  std::size_t restarts = 64;
  std::size_t max_swaps = 500;
  RngStream rng{};

  void validate() const;
};

struct SearchResult {
  double value = 0.0;
  IndexSet witness_rows;
  IndexSet witness_cols;
  bool certified = false;
};

/// max ||U(I,J)|| over |I| = n, |J| = m.
SearchResult max_submatrix_norm(const ComplexMatrix& u, std::size_t n, std::size_t m,
                                const SearchBudget& budget);

/// Exact max norm of an n x 1 block: per column, the root of the sum of the n
/// largest squared moduli; maximized over columns.
SearchResult max_column_subvector_norm(const ComplexMatrix& u, std::size_t n);
/// Exact max norm of a 1 x m block.
SearchResult max_row_subvector_norm(const ComplexMatrix& u, std::size_t m);

enum class ProfileKind { s, R, S };
enum class Certification { exact, heuristic_lower_bound };

std::string_view to_string(ProfileKind kind);

struct ProfileEntry {
  std::size_t k = 0;
  double value = 0.0;
  Certification cert = Certification::exact;
  std::size_t split_n = 0;
  std::size_t split_m = 0;
  std::vector<std::size_t> witness_rows;
  std::vector<std::size_t> witness_cols;
};

/// Coefficient sequence s_k / R_k (k = 1..N) or S_k (k = 0..LN-1).
class NormProfile {
 public:
  NormProfile(ProfileKind kind, std::size_t dim, std::size_t measurements,
              std::vector<ProfileEntry> entries);

  ProfileKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  std::size_t measurements() const { return measurements_; }
  std::size_t first_index() const { return kind_ == ProfileKind::S ? 0 : 1; }
  std::size_t size() const { return entries_.size(); }

  const std::vector<ProfileEntry>& entries() const { return entries_; }
  /// Value at profile index k (first_index() <= k < first_index()+size()).
  double at(std::size_t k) const;
  std::vector<double> values() const;
  bool certified() const;

 private:
  ProfileKind kind_;
  std::size_t dim_;
  std::size_t measurements_;
  std::vector<ProfileEntry> entries_;
};

NormProfile s_profile(const ComplexMatrix& u, const SearchBudget& budget);
NormProfile r_profile(const NormProfile& s);
NormProfile multi_measurement_profile(std::span<const ComplexMatrix> us, const SearchBudget& budget);

/// Whether every split of every k would be enumerated exhaustively.
bool s_profile_is_exhaustive(std::size_t dim, const SearchBudget& budget);
bool multi_profile_is_exhaustive(std::size_t dim, std::size_t measurements,
                                 const SearchBudget& budget);

/// Binomial coefficient saturated at UINT64_MAX.
std::uint64_t binomial(std::size_t n, std::size_t k);

/// CSV dump: k,value,certified,split_n,split_m,witness_rows,witness_cols.
void write_profile_csv(std::ostream& out, const NormProfile& profile);

}  // namespace eurlab
