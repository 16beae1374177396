#include "eurlab/submatrix_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "eurlab/error.hpp"
#include "eurlab/text.hpp"

namespace eurlab {

namespace {

using Indices = std::vector<std::size_t>;

constexpr double kTieTolerance = 1e-12;

struct Candidate {
  double value = -1.0;
  Indices rows;
  Indices cols;
};

// Strictly larger beyond the tie tolerance wins; within it the
// lexicographically smaller (rows, cols) wins.
bool better(double value, const Indices& rows, const Indices& cols, const Candidate& best) {
  if (best.value < 0.0) return true;
  const double tol = kTieTolerance * std::max(1.0, best.value);
  if (value > best.value + tol) return true;
  if (value < best.value - tol) return false;
  if (rows != best.rows) return rows < best.rows;
  return cols < best.cols;
}

void offer(Candidate& best, double value, const Indices& rows, const Indices& cols) {
  if (better(value, rows, cols, best)) {
    best.value = value;
    best.rows = rows;
    best.cols = cols;
  }
}

Indices first_combination(std::size_t k) {
  Indices c(k);
  std::iota(c.begin(), c.end(), std::size_t{0});
  return c;
}

// Advances c to the next k-subset of {0..n-1} in lexicographic order.
bool next_combination(Indices& c, std::size_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void gather(const Eigen::MatrixXcd& u, const Indices& rows, const Indices& cols,
            Eigen::MatrixXcd& block) {
  block.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t b = 0; b < cols.size(); ++b) {
    for (std::size_t a = 0; a < rows.size(); ++a) {
      block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          u(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b]));
    }
  }
}

// Indices of the k largest weights (ties broken toward the lower index),
// returned in increasing order.
Indices top_k(const Eigen::VectorXd& weights, std::size_t k) {
  Indices idx(static_cast<std::size_t>(weights.size()));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double wa = weights(static_cast<Eigen::Index>(a));
                      const double wb = weights(static_cast<Eigen::Index>(b));
                      if (wa != wb) return wa > wb;
                      return a < b;
                    });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

void validate_split(const ComplexMatrix& u, std::size_t n, std::size_t m) {
  if (n < 1 || n > u.rows() || m < 1 || m > u.cols()) {
    throw InvalidInput("submatrix size out of range for the matrix shape");
  }
}

Candidate exhaustive_search(const Eigen::MatrixXcd& u, std::size_t n, std::size_t m) {
  const auto rows_total = static_cast<std::size_t>(u.rows());
  const auto cols_total = static_cast<std::size_t>(u.cols());
  const Eigen::MatrixXd abs2 = u.cwiseAbs2();
  Candidate best;
  Eigen::MatrixXcd block;
  Indices rows = first_combination(n);
  do {
    Eigen::VectorXd row_mass = Eigen::VectorXd::Zero(u.cols());
    for (auto i : rows) row_mass += abs2.row(static_cast<Eigen::Index>(i)).transpose();
    Indices cols = first_combination(m);
    do {
      if (best.value >= 0.0) {
        double hs2 = 0.0;
        for (auto j : cols) hs2 += row_mass(static_cast<Eigen::Index>(j));
        // sigma_max <= ||.||_HS, so this block cannot beat the incumbent.
        if (std::sqrt(hs2) <= best.value * (1.0 + kTieTolerance) + kTieTolerance) continue;
      }
      gather(u, rows, cols, block);
      offer(best, operator_norm(block), rows, cols);
    } while (next_combination(cols, cols_total));
  } while (next_combination(rows, rows_total));
  return best;
}

// Top singular triplet of a block through the Gram matrix of its smaller side.
struct Triplet {
  double sigma = 0.0;
  Eigen::VectorXcd left;
  Eigen::VectorXcd right;
};

Triplet top_triplet(const Eigen::MatrixXcd& block) {
  Triplet t;
  if (block.cols() <= block.rows()) {
    Eigen::MatrixXcd gram = block.adjoint().lazyProduct(block);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    const Eigen::Index top = gram.rows() - 1;
    t.sigma = std::sqrt(std::max(eig.eigenvalues()(top), 0.0));
    t.right = eig.eigenvectors().col(top);
    t.left = block * t.right;
    const double norm = t.left.norm();
    if (norm > 0.0) t.left /= norm;
  } else {
    Eigen::MatrixXcd gram = block.lazyProduct(block.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram);
    const Eigen::Index top = gram.rows() - 1;
    t.sigma = std::sqrt(std::max(eig.eigenvalues()(top), 0.0));
    t.left = eig.eigenvectors().col(top);
    t.right = block.adjoint() * t.left;
    const double norm = t.right.norm();
    if (norm > 0.0) t.right /= norm;
  }
  return t;
}

// Alternating power iteration from a good singular-vector guess: the right
// vector when only rows changed, the left one when only columns changed.
// Falls back to the eigen-solver if it has not settled after a few dozen
// steps; close top singular values make the iteration crawl.
Triplet refine_triplet(const Eigen::MatrixXcd& block, const Eigen::VectorXcd& guess,
                       bool guess_is_right) {
  constexpr int kMaxIterations = 30;
  constexpr double kResidual = 1e-10;
  const Eigen::MatrixXcd adj = block.adjoint();
  const Eigen::MatrixXcd& forward = guess_is_right ? block : adj;
  const Eigen::MatrixXcd& backward = guess_is_right ? adj : block;
  Eigen::VectorXcd x = guess;
  Eigen::VectorXcd y;
  Eigen::VectorXcd z;
  for (int it = 0; it < kMaxIterations; ++it) {
    y.noalias() = forward * x;
    const double s1 = y.norm();
    if (s1 == 0.0) break;
    y /= s1;
    z.noalias() = backward * y;
    const double s2 = z.norm();
    z /= s2;
    x = z;
    const double gap2 = std::max(s2 * s2 - s1 * s1, 0.0);
    if (std::sqrt(gap2) <= kResidual * s2) {
      Triplet t;
      t.sigma = s2;
      if (guess_is_right) {
        t.right = x;
        t.left = y;
      } else {
        t.left = x;
        t.right = y;
      }
      return t;
    }
  }
  return top_triplet(block);
}

class LocalSearch {
 public:
  LocalSearch(const Eigen::MatrixXcd& u, std::size_t n, std::size_t m, std::size_t max_swaps)
      : u_(u), n_(n), m_(m), max_swaps_(max_swaps) {}

  // Runs alternating ascent then single-interchange ascent from (rows, cols)
  // and reports every visited block to `best`.
  void run(Indices rows, Indices cols, Candidate& best) {
    Triplet t = evaluate(rows, cols);
    offer(best, t.sigma, rows, cols);
    alternate(rows, cols, t, best);
    interchange(rows, cols, t.sigma, best);
  }

  Indices greedy_rows_for(const Indices& cols) const {
    Eigen::VectorXd w(u_.rows());
    for (Eigen::Index i = 0; i < u_.rows(); ++i) {
      double s = 0.0;
      for (auto j : cols) s += std::norm(u_(i, static_cast<Eigen::Index>(j)));
      w(i) = s;
    }
    return top_k(w, n_);
  }

  Indices greedy_cols_for(std::size_t row) const {
    return top_k(u_.row(static_cast<Eigen::Index>(row)).cwiseAbs2().transpose(), m_);
  }

 private:
  Triplet evaluate(const Indices& rows, const Indices& cols) {
    gather(u_, rows, cols, block_);
    return top_triplet(block_);
  }

  Triplet evaluate_from(const Indices& rows, const Indices& cols, const Eigen::VectorXcd& guess,
                        bool guess_is_right) {
    gather(u_, rows, cols, block_);
    return refine_triplet(block_, guess, guess_is_right);
  }

  void alternate(Indices& rows, Indices& cols, Triplet& t, Candidate& best) {
    constexpr int kMaxRounds = 100;
    for (int round = 0; round < kMaxRounds; ++round) {
      bool changed = false;
      if (n_ < static_cast<std::size_t>(u_.rows())) {
        Eigen::VectorXcd w = Eigen::VectorXcd::Zero(u_.rows());
        for (std::size_t b = 0; b < cols.size(); ++b) {
          w += u_.col(static_cast<Eigen::Index>(cols[b])) * t.right(static_cast<Eigen::Index>(b));
        }
        Indices next = top_k(w.cwiseAbs2(), n_);
        if (next != rows) {
          Triplet nt = evaluate_from(next, cols, t.right, true);
          if (nt.sigma > t.sigma * (1.0 + kTieTolerance)) {
            rows = std::move(next);
            t = std::move(nt);
            offer(best, t.sigma, rows, cols);
            changed = true;
          }
        }
      }
      if (m_ < static_cast<std::size_t>(u_.cols())) {
        Eigen::VectorXcd z = Eigen::VectorXcd::Zero(u_.cols());
        for (std::size_t a = 0; a < rows.size(); ++a) {
          z += u_.row(static_cast<Eigen::Index>(rows[a])).adjoint() *
               t.left(static_cast<Eigen::Index>(a));
        }
        Indices next = top_k(z.cwiseAbs2(), m_);
        if (next != cols) {
          Triplet nt = evaluate_from(rows, next, t.left, false);
          if (nt.sigma > t.sigma * (1.0 + kTieTolerance)) {
            cols = std::move(next);
            t = std::move(nt);
            offer(best, t.sigma, rows, cols);
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
  }

  // Steepest ascent over single row or single column replacements. Replacing
  // row a by row b gives sigma^2 <= sigma(B without a)^2 + |u_bJ|^2, so
  // candidates are visited in decreasing order of that bound and the scan
  // stops once no remaining candidate can beat the best one found.
  void interchange(Indices& rows, Indices& cols, double value, Candidate& best) {
    struct Move {
      double bound;
      bool is_row;
      std::size_t out;
      std::size_t in;
    };
    std::vector<Move> moves;
    for (std::size_t swap = 0; swap < max_swaps_; ++swap) {
      moves.clear();
      collect_moves(rows, cols, true, moves);
      collect_moves(rows, cols, false, moves);
      std::sort(moves.begin(), moves.end(), [](const Move& x, const Move& y) {
        if (x.bound != y.bound) return x.bound > y.bound;
        if (x.is_row != y.is_row) return x.is_row;
        if (x.out != y.out) return x.out < y.out;
        return x.in < y.in;
      });

      Candidate step;
      step.value = value;
      step.rows = rows;
      step.cols = cols;
      bool improved = false;
      const double floor = value * (1.0 + kTieTolerance);
      for (const Move& mv : moves) {
        const double reach = std::max(floor, step.value);
        if (mv.bound * (1.0 + kTieTolerance) + kTieTolerance < reach) break;
        Indices r = rows;
        Indices c = cols;
        Indices& target = mv.is_row ? r : c;
        target[mv.out] = mv.in;
        std::sort(target.begin(), target.end());
        gather(u_, r, c, block_);
        const double v = operator_norm(block_);
        if (v > floor && better(v, r, c, step)) {
          step.value = v;
          step.rows = std::move(r);
          step.cols = std::move(c);
          improved = true;
        }
      }
      if (!improved) return;
      rows = std::move(step.rows);
      cols = std::move(step.cols);
      value = step.value;
      offer(best, value, rows, cols);
    }
  }

  template <typename MoveVec>
  void collect_moves(const Indices& rows, const Indices& cols, bool by_row, MoveVec& moves) {
    const Indices& set = by_row ? rows : cols;
    const Indices& other = by_row ? cols : rows;
    const auto universe = static_cast<std::size_t>(by_row ? u_.rows() : u_.cols());
    if (set.size() == universe) return;
    std::vector<char> member(universe, 0);
    for (auto i : set) member[i] = 1;

    std::vector<double> incoming(universe, 0.0);
    for (std::size_t x = 0; x < universe; ++x) {
      if (member[x]) continue;
      double sum = 0.0;
      for (auto y : other) {
        const auto xi = static_cast<Eigen::Index>(x);
        const auto yi = static_cast<Eigen::Index>(y);
        sum += std::norm(by_row ? u_(xi, yi) : u_(yi, xi));
      }
      incoming[x] = sum;
    }
    for (std::size_t out = 0; out < set.size(); ++out) {
      double rest2 = 0.0;
      if (set.size() > 1) {
        Indices reduced = set;
        reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(out));
        if (by_row) {
          gather(u_, reduced, cols, block_);
        } else {
          gather(u_, rows, reduced, block_);
        }
        const double rest = operator_norm(block_);
        rest2 = rest * rest;
      }
      for (std::size_t in = 0; in < universe; ++in) {
        if (member[in]) continue;
        moves.push_back({std::sqrt(rest2 + incoming[in]), by_row, out, in});
      }
    }
  }

  const Eigen::MatrixXcd& u_;
  std::size_t n_;
  std::size_t m_;
  std::size_t max_swaps_;
  Eigen::MatrixXcd block_;
};

// Adds the smallest index not yet present; the norm can only grow.
Indices lift(const Indices& set, std::size_t universe) {
  Indices out = set;
  for (std::size_t i = 0; i < universe; ++i) {
    if (!std::binary_search(set.begin(), set.end(), i)) {
      out.push_back(i);
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  return out;
}

struct Start {
  Indices rows;
  Indices cols;
};

Candidate heuristic_search(const Eigen::MatrixXcd& u, std::size_t n, std::size_t m,
                           const SearchBudget& budget, const std::vector<Start>& extra_starts) {
  LocalSearch search(u, n, m, budget.max_swaps);
  Candidate best;

  for (const auto& s : extra_starts) search.run(s.rows, s.cols, best);

  // Greedy start from the largest-modulus entry.
  Eigen::Index i_max = 0;
  Eigen::Index j_max = 0;
  u.cwiseAbs2().maxCoeff(&i_max, &j_max);
  {
    Indices cols = search.greedy_cols_for(static_cast<std::size_t>(i_max));
    Indices rows = search.greedy_rows_for(cols);
    search.run(std::move(rows), std::move(cols), best);
  }

  for (std::size_t r = 1; r < budget.restarts; ++r) {
    StreamEngine engine(budget.rng.child(r));
    Indices rows = random_subset(engine, static_cast<std::size_t>(u.rows()), n);
    Indices cols = random_subset(engine, static_cast<std::size_t>(u.cols()), m);
    search.run(std::move(rows), std::move(cols), best);
  }
  return best;
}

SearchResult finish(const ComplexMatrix& u, Candidate c, bool certified) {
  // Recompute from the witness so the reported value is exactly reproducible.
  Eigen::MatrixXcd block;
  gather(u.eigen(), c.rows, c.cols, block);
  const double value = operator_norm(block);
  return SearchResult{value, IndexSet(u.rows(), std::move(c.rows)),
                      IndexSet(u.cols(), std::move(c.cols)), certified};
}

SearchResult search_block(const ComplexMatrix& u, std::size_t n, std::size_t m,
                          const SearchBudget& budget, const std::vector<Start>& extra_starts) {
  validate_split(u, n, m);
  budget.validate();
  const std::uint64_t count = [&] {
    const std::uint64_t a = binomial(u.rows(), n);
    const std::uint64_t b = binomial(u.cols(), m);
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
  }();
  if (count <= budget.max_enumerations) {
    return finish(u, exhaustive_search(u.eigen(), n, m), true);
  }
  return finish(u, heuristic_search(u.eigen(), n, m, budget, extra_starts), false);
}

ProfileEntry entry_from(std::size_t k, const SearchResult& r, std::size_t n, std::size_t m) {
  ProfileEntry e;
  e.k = k;
  e.value = r.value;
  e.cert = r.certified ? Certification::exact : Certification::heuristic_lower_bound;
  e.split_n = n;
  e.split_m = m;
  e.witness_rows = r.witness_rows.members();
  e.witness_cols = r.witness_cols.members();
  return e;
}

}  // namespace

void SearchBudget::validate() const {
  if (max_enumerations < 1) throw InvalidInput("max_enumerations must be at least 1");
  if (restarts < 1) throw InvalidInput("restarts must be at least 1");
}

std::uint64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __extension__ unsigned __int128 acc = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(acc);
}

SearchResult max_submatrix_norm(const ComplexMatrix& u, std::size_t n, std::size_t m,
                                const SearchBudget& budget) {
  return search_block(u, n, m, budget, {});
}

SearchResult max_column_subvector_norm(const ComplexMatrix& u, std::size_t n) {
  validate_split(u, n, 1);
  const Eigen::MatrixXd abs2 = u.eigen().cwiseAbs2();
  Candidate best;
  for (Eigen::Index j = 0; j < abs2.cols(); ++j) {
    Indices rows = top_k(abs2.col(j), n);
    double sum = 0.0;
    for (auto i : rows) sum += abs2(static_cast<Eigen::Index>(i), j);
    offer(best, std::sqrt(sum), rows, Indices{static_cast<std::size_t>(j)});
  }
  return finish(u, std::move(best), true);
}

SearchResult max_row_subvector_norm(const ComplexMatrix& u, std::size_t m) {
  validate_split(u, 1, m);
  const Eigen::MatrixXd abs2 = u.eigen().cwiseAbs2();
  Candidate best;
  for (Eigen::Index i = 0; i < abs2.rows(); ++i) {
    Indices cols = top_k(abs2.row(i).transpose(), m);
    double sum = 0.0;
    for (auto j : cols) sum += abs2(i, static_cast<Eigen::Index>(j));
    offer(best, std::sqrt(sum), Indices{static_cast<std::size_t>(i)}, cols);
  }
  return finish(u, std::move(best), true);
}

std::string_view to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::s: return "s";
    case ProfileKind::R: return "R";
    case ProfileKind::S: return "S";
  }
  return "?";
}

NormProfile::NormProfile(ProfileKind kind, std::size_t dim, std::size_t measurements,
                         std::vector<ProfileEntry> entries)
    : kind_(kind), dim_(dim), measurements_(measurements), entries_(std::move(entries)) {
  if (dim_ < 1) throw InvalidInput("profile dimension must be positive");
  if (kind_ == ProfileKind::S) {
    if (measurements_ < 2) throw InvalidInput("S-profile needs at least two measurements");
  } else if (measurements_ != 1) {
    throw InvalidInput("s- and R-profiles describe a single pair of bases");
  }
  const std::size_t expected = kind_ == ProfileKind::S ? dim_ * measurements_ : dim_;
  if (entries_.size() != expected) throw InvalidInput("profile has the wrong number of entries");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!std::isfinite(entries_[i].value) || entries_[i].value < 0.0) {
      throw InvalidInput("profile values must be finite and nonnegative");
    }
    entries_[i].k = first_index() + i;
  }
}

double NormProfile::at(std::size_t k) const {
  if (k < first_index() || k - first_index() >= entries_.size()) {
    throw InvalidInput("profile index out of range");
  }
  return entries_[k - first_index()].value;
}

std::vector<double> NormProfile::values() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.value);
  return out;
}

bool NormProfile::certified() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const ProfileEntry& e) { return e.cert == Certification::exact; });
}

bool s_profile_is_exhaustive(std::size_t dim, const SearchBudget& budget) {
  for (std::size_t n = 2; n < dim; ++n) {
    for (std::size_t m = 2; n + m <= dim + 1; ++m) {
      const std::uint64_t a = binomial(dim, n);
      const std::uint64_t b = binomial(dim, m);
      if (b != 0 && a > budget.max_enumerations / b) return false;
    }
  }
  return true;
}

bool multi_profile_is_exhaustive(std::size_t dim, std::size_t measurements,
                                 const SearchBudget& budget) {
  const std::size_t total = dim * measurements;
  for (std::size_t t = 2; t <= total - dim; ++t) {
    if (binomial(total, t) > budget.max_enumerations) return false;
  }
  return true;
}

NormProfile s_profile(const ComplexMatrix& u, const SearchBudget& budget) {
  if (!u.is_square()) throw InvalidInput("s-profile requires a square matrix");
  budget.validate();
  const std::size_t dim = u.rows();
  std::vector<ProfileEntry> entries;
  entries.reserve(dim);

  // Winning witness of each split (n, m) at the previous k, indexed by n.
  std::vector<Start> previous(dim + 2);

  {
    const EntryExtremes ext = entry_extremes(u);
    ProfileEntry e;
    e.k = 1;
    e.value = ext.largest;
    e.split_n = 1;
    e.split_m = 1;
    e.witness_rows = {ext.row};
    e.witness_cols = {ext.col};
    entries.push_back(e);
    previous[1] = Start{{ext.row}, {ext.col}};
  }

  for (std::size_t k = 2; k <= dim; ++k) {
    std::vector<Start> current(dim + 2);
    ProfileEntry winner;
    bool have_winner = false;
    bool all_exact = true;
    for (std::size_t n = 1; n <= k; ++n) {
      const std::size_t m = k + 1 - n;
      SearchResult r = [&] {
        if (m == 1) return max_column_subvector_norm(u, n);
        if (n == 1) return max_row_subvector_norm(u, m);
        std::vector<Start> starts;
        // Splits (n-1, m) and (n, m-1) at k-1 extend to (n, m) here.
        if (n - 1 >= 1 && !previous[n - 1].rows.empty()) {
          starts.push_back({lift(previous[n - 1].rows, dim), previous[n - 1].cols});
        }
        if (!previous[n].rows.empty()) {
          starts.push_back({previous[n].rows, lift(previous[n].cols, dim)});
        }
        SearchBudget split_budget = budget;
        split_budget.rng = budget.rng.child({k, n});
        return search_block(u, n, m, split_budget, starts);
      }();
      all_exact = all_exact && r.certified;
      current[n] = Start{r.witness_rows.members(), r.witness_cols.members()};
      const double tol = kTieTolerance * std::max(1.0, winner.value);
      if (!have_winner || r.value > winner.value + tol) {
        winner = entry_from(k, r, n, m);
        have_winner = true;
      }
    }
    winner.cert = all_exact ? Certification::exact : Certification::heuristic_lower_bound;
    entries.push_back(std::move(winner));
    previous = std::move(current);
  }
  return NormProfile(ProfileKind::s, dim, 1, std::move(entries));
}

NormProfile r_profile(const NormProfile& s) {
  if (s.kind() != ProfileKind::s) throw InvalidInput("R-profile is derived from an s-profile");
  std::vector<ProfileEntry> entries = s.entries();
  for (auto& e : entries) {
    const double half = 0.5 * (1.0 + e.value);
    e.value = half * half;
  }
  return NormProfile(ProfileKind::R, s.dim(), 1, std::move(entries));
}

NormProfile multi_measurement_profile(std::span<const ComplexMatrix> us,
                                      const SearchBudget& budget) {
  if (us.size() < 2) throw InvalidInput("multi-measurement profile needs at least two unitaries");
  budget.validate();
  const std::size_t dim = us.front().rows();
  for (const auto& u : us) {
    if (!u.is_square() || u.rows() != dim) throw InvalidInput("unitaries must share one dimension");
    if (unitarity_defect(u) > 1e-8) throw InvalidInput("input matrix is not unitary");
  }
  const ComplexMatrix w = concatenate_columns(us);
  const std::size_t total = w.cols();

  std::vector<ProfileEntry> entries;
  entries.reserve(total);
  Indices all_rows = first_combination(dim);
  {
    ProfileEntry e;
    e.k = 0;
    e.value = 1.0;  // every column is a unit vector
    e.split_n = dim;
    e.split_m = 1;
    e.witness_rows = all_rows;
    e.witness_cols = {0};
    entries.push_back(e);
  }
  Indices previous = {0};
  // With every row kept, W_J W_J^* = L I - W_J' W_J'^* for the complement J'.
  // Fewer than N complement columns leave that Gram singular, so S_k = L.
  const std::size_t saturated = total - dim;
  for (std::size_t k = 1; k < total; ++k) {
    if (k + 1 > saturated) {
      Indices cols = first_combination(k + 1);
      Eigen::MatrixXcd block;
      gather(w.eigen(), all_rows, cols, block);
      const double norm = operator_norm(block);
      SearchResult r{norm, IndexSet(dim, all_rows), IndexSet(total, std::move(cols)), true};
      ProfileEntry e = entry_from(k, r, dim, k + 1);
      e.value = norm * norm;
      entries.push_back(std::move(e));
      continue;
    }
    std::vector<Start> starts{{all_rows, lift(previous, total)}};
    SearchBudget step_budget = budget;
    step_budget.rng = budget.rng.child(k);
    SearchResult r = search_block(w, dim, k + 1, step_budget, starts);
    ProfileEntry e = entry_from(k, r, dim, k + 1);
    e.value = r.value * r.value;
    previous = e.witness_cols;
    entries.push_back(std::move(e));
  }
  return NormProfile(ProfileKind::S, dim, us.size(), std::move(entries));
}

void write_profile_csv(std::ostream& out, const NormProfile& profile) {
  out << "k,value,certified,split_n,split_m,witness_rows,witness_cols\n";
  for (const auto& e : profile.entries()) {
    out << e.k << ',' << format_double(e.value) << ','
        << (e.cert == Certification::exact ? 1 : 0) << ',' << e.split_n << ',' << e.split_m << ','
        << join_indices(e.witness_rows) << ',' << join_indices(e.witness_cols) << '\n';
  }
}

}  // namespace eurlab
