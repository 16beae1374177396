#include "eurlab/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "eurlab/error.hpp"

namespace eurlab {

namespace {

void validate_shape_and_values(const Eigen::MatrixXcd& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw InvalidInput("matrix must have at least one row and one column");
  }
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidInput("matrix entries must be finite");
      }
    }
  }
}

std::vector<double> sorted_descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::span<const Complex> row_major) {
  if (rows < 1 || cols < 1) {
    throw InvalidInput("matrix must have at least one row and one column");
  }
  if (row_major.size() != rows * cols) {
    throw InvalidInput("entry count does not match rows*cols");
  }
  values_.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row_major[i * cols + j];
    }
  }
  validate_shape_and_values(values_);
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd values) : values_(std::move(values)) {
  validate_shape_and_values(values_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  if (n < 1) throw InvalidInput("identity dimension must be positive");
  const auto k = static_cast<Eigen::Index>(n);
  return ComplexMatrix(Eigen::MatrixXcd::Identity(k, k));
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1) throw InvalidInput("matrix dimensions must be positive");
  return ComplexMatrix(
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)));
}

std::vector<Complex> ComplexMatrix::row_major() const {
  std::vector<Complex> out;
  out.reserve(rows() * cols());
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < values_.cols(); ++j) out.push_back(values_(i, j));
  }
  return out;
}

IndexSet::IndexSet(std::size_t universe, std::vector<std::size_t> members)
    : universe_(universe), members_(std::move(members)) {
  if (members_.empty()) throw InvalidInput("index set must be nonempty");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] >= universe_) throw InvalidInput("index out of range");
    if (i > 0 && members_[i] <= members_[i - 1]) {
      throw InvalidInput("index set must be strictly increasing");
    }
  }
}

IndexSet IndexSet::full(std::size_t universe) {
  std::vector<std::size_t> all(universe);
  for (std::size_t i = 0; i < universe; ++i) all[i] = i;
  return IndexSet(universe, std::move(all));
}

IndexSet IndexSet::single(std::size_t universe, std::size_t index) {
  return IndexSet(universe, {index});
}

SingularSpectrum singular_spectrum(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  const Eigen::Index r = m.rows();
  const Eigen::Index c = m.cols();
  if (r < 1 || c < 1) throw InvalidInput("matrix must have at least one row and one column");
  if (!m.allFinite()) throw InvalidInput("matrix entries must be finite");

  if (r == 1 || c == 1) {
    return SingularSpectrum{{m.norm()}};
  }

  const Eigen::Index k = std::min(r, c);
  std::vector<double> values(static_cast<std::size_t>(k));
  if (static_cast<std::size_t>(k) <= kGramPathLimit) {
    Eigen::MatrixXcd gram = (c <= r) ? Eigen::MatrixXcd(m.adjoint() * m)
                                     : Eigen::MatrixXcd(m * m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
    const auto& lambda = eig.eigenvalues();
    for (Eigen::Index i = 0; i < k; ++i) {
      values[static_cast<std::size_t>(i)] = std::sqrt(std::max(lambda(i), 0.0));
    }
  } else {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < k; ++i) values[static_cast<std::size_t>(i)] = s(i);
  }
  return SingularSpectrum{sorted_descending(std::move(values))};
}

SingularSpectrum singular_spectrum(const ComplexMatrix& m) { return singular_spectrum(m.eigen()); }

double operator_norm(const Eigen::Ref<const Eigen::MatrixXcd>& m) {
  const Eigen::Index r = m.rows();
  const Eigen::Index c = m.cols();
  if (r < 1 || c < 1) throw InvalidInput("matrix must have at least one row and one column");
  if (!m.allFinite()) throw InvalidInput("matrix entries must be finite");
  if (r == 1 || c == 1) return m.norm();
  const Eigen::Index k = std::min(r, c);
  if (static_cast<std::size_t>(k) > kGramPathLimit) return singular_spectrum(m).max();

  // Only the top eigenvalue of the smaller Gram matrix is needed.
  Eigen::MatrixXcd gram(k, k);
  if (c <= r) {
    gram.noalias() = m.adjoint().lazyProduct(m);
  } else {
    gram.noalias() = m.lazyProduct(m.adjoint());
  }
  if (k == 2) {
    const double half_sum = 0.5 * (gram(0, 0).real() + gram(1, 1).real());
    const double half_diff = 0.5 * (gram(0, 0).real() - gram(1, 1).real());
    const double top = half_sum + std::sqrt(half_diff * half_diff + std::norm(gram(1, 0)));
    return std::sqrt(std::max(top, 0.0));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(eig.eigenvalues()(k - 1), 0.0));
}

double operator_norm(const ComplexMatrix& m) { return operator_norm(m.eigen()); }

double hilbert_schmidt_norm(const ComplexMatrix& m) { return m.eigen().norm(); }

ComplexMatrix submatrix(const ComplexMatrix& m, const IndexSet& rows, const IndexSet& cols) {
  if (rows.universe() != m.rows() || cols.universe() != m.cols()) {
    throw InvalidInput("index set universe does not match matrix shape");
  }
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = m(rows[a], cols[b]);
    }
  }
  return ComplexMatrix(std::move(out));
}

double unitarity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw InvalidInput("unitarity defect requires a square matrix");
  const auto n = static_cast<Eigen::Index>(m.rows());
  return (m.eigen().adjoint() * m.eigen() - Eigen::MatrixXcd::Identity(n, n)).norm();
}

EntryExtremes entry_extremes(const ComplexMatrix& m) {
  EntryExtremes e;
  e.largest = -1.0;
  e.second = -1.0;
  // Row-major scan so the reported position is the first maximum in logical order.
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double a = std::abs(m(i, j));
      if (a > e.largest) {
        e.second = e.largest;
        e.largest = a;
        e.row = i;
        e.col = j;
      } else if (a > e.second) {
        e.second = a;
      }
    }
  }
  if (e.second < 0.0) e.second = e.largest;
  return e;
}

ComplexMatrix adjoint(const ComplexMatrix& m) { return ComplexMatrix(m.eigen().adjoint()); }

ComplexMatrix concatenate_columns(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) throw InvalidInput("nothing to concatenate");
  const Eigen::Index rows = blocks.front().eigen().rows();
  Eigen::Index cols = 0;
  for (const auto& b : blocks) {
    if (b.eigen().rows() != rows) throw InvalidInput("row counts differ in concatenation");
    cols += b.eigen().cols();
  }
  Eigen::MatrixXcd out(rows, cols);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    out.middleCols(offset, b.eigen().cols()) = b.eigen();
    offset += b.eigen().cols();
  }
  return ComplexMatrix(std::move(out));
}

std::string format_complex(Complex z) {
  char buf[96];
  const double im = z.imag();
  const bool negative_im = std::signbit(im);
  std::snprintf(buf, sizeof buf, "%.17g%c%.17gj", z.real(), negative_im ? '-' : '+',
                std::fabs(im));
  return buf;
}

Complex parse_complex(const std::string& token) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double re = std::strtod(begin, &end);
  if (end == begin || (*end != '+' && *end != '-')) {
    throw InvalidInput("malformed complex entry: " + token);
  }
  const char* im_begin = end;
  const double im = std::strtod(im_begin, &end);
  if (end == im_begin || *end != 'j' || *(end + 1) != '\0') {
    throw InvalidInput("malformed complex entry: " + token);
  }
  return {re, im};
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_complex(m(i, j));
    }
    out << '\n';
  }
}

ComplexMatrix read_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw InvalidInput("matrix file is empty");
  std::istringstream hs(header);
  long long rows = 0;
  long long cols = 0;
  if (!(hs >> rows >> cols) || rows < 1 || cols < 1) {
    throw InvalidInput("matrix header must be \"rows cols\" with positive counts");
  }
  std::vector<Complex> entries;
  entries.reserve(static_cast<std::size_t>(rows * cols));
  std::string line;
  for (long long i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw InvalidInput("matrix file has too few rows");
    std::istringstream ls(line);
    std::string token;
    long long count = 0;
    while (ls >> token) {
      entries.push_back(parse_complex(token));
      ++count;
    }
    if (count != cols) throw InvalidInput("matrix row has wrong number of entries");
  }
  return ComplexMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), entries);
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_matrix(out, m);
  if (!out) throw std::runtime_error("failed writing " + path);
}

ComplexMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_matrix(in);
}

}  // namespace eurlab
