#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eurlab {

using Complex = std::complex<double>;

/// Dense complex matrix with at least one row and one column and only finite
/// entries. Immutable after construction; the logical entry order for
/// construction and serialization is row-major.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols, std::span<const Complex> row_major);
  explicit ComplexMatrix(Eigen::MatrixXcd values);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }
  bool is_square() const { return values_.rows() == values_.cols(); }

  Complex operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const Eigen::MatrixXcd& eigen() const { return values_; }
  std::vector<Complex> row_major() const;

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.values_.rows() == b.values_.rows() && a.values_.cols() == b.values_.cols() &&
           a.values_ == b.values_;
  }

 private:
  Eigen::MatrixXcd values_;
};

/// Nonempty, strictly increasing subset of {0, ..., universe-1}.
class IndexSet {
 public:
  IndexSet(std::size_t universe, std::vector<std::size_t> members);

  static IndexSet full(std::size_t universe);
  static IndexSet single(std::size_t universe, std::size_t index);

  std::size_t universe() const { return universe_; }
  std::size_t size() const { return members_.size(); }
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t operator[](std::size_t i) const { return members_[i]; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet& a, const IndexSet& b) { return a.members_ <=> b.members_; }

 private:
  std::size_t universe_;
  std::vector<std::size_t> members_;
};

/// Singular values in nonincreasing order; length min(rows, cols).
struct SingularSpectrum {
  std::vector<double> values;

  double max() const { return values.front(); }
};

// Blocks with min(rows, cols) at or below this size go through the Gram
// eigen-decomposition; larger ones use a divide-and-conquer SVD.
inline constexpr std::size_t kGramPathLimit = 64;

SingularSpectrum singular_spectrum(const ComplexMatrix& m);
SingularSpectrum singular_spectrum(const Eigen::Ref<const Eigen::MatrixXcd>& m);

double operator_norm(const ComplexMatrix& m);
double operator_norm(const Eigen::Ref<const Eigen::MatrixXcd>& m);

double hilbert_schmidt_norm(const ComplexMatrix& m);

ComplexMatrix submatrix(const ComplexMatrix& m, const IndexSet& rows, const IndexSet& cols);

/// ||m^dagger m - 1||_HS. Zero iff m is unitary.
double unitarity_defect(const ComplexMatrix& m);

/// Largest entry modulus and second order statistic over all entries
/// (ties give second == largest). A 1x1 matrix has second == largest.
struct EntryExtremes {
  double largest = 0.0;
  double second = 0.0;
  std::size_t row = 0;
  std::size_t col = 0;
};
EntryExtremes entry_extremes(const ComplexMatrix& m);

ComplexMatrix adjoint(const ComplexMatrix& m);

/// Horizontal concatenation [m_1 | m_2 | ...]; all blocks must share a row count.
ComplexMatrix concatenate_columns(std::span<const ComplexMatrix> blocks);

// Text format: first line "rows cols", then one line per row holding
// `cols` entries written as "re+imj" (17 significant digits), single-space
// separated.
std::string format_complex(Complex z);
Complex parse_complex(const std::string& token);
void write_matrix(std::ostream& out, const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& in);
void save_matrix(const std::string& path, const ComplexMatrix& m);
ComplexMatrix load_matrix(const std::string& path);

}  // namespace eurlab
