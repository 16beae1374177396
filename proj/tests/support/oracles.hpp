#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls the search code under test: subsets are
// enumerated by bitmask from the top down and each block goes through the
// full singular_spectrum rather than the operator_norm shortcuts.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "eurlab/matrix_core.hpp"

namespace eurlab::testing {

/// sigma_max via a two-sided Jacobi SVD.
double jacobi_norm(const Eigen::MatrixXcd& m);

/// All singular values (Jacobi), nonincreasing.
std::vector<double> jacobi_spectrum(const Eigen::MatrixXcd& m);

/// Calls visit(mask) for every subset of {0..n-1} of size k, largest mask first.
void for_each_subset_desc(std::size_t n, std::size_t k,
                          const std::function<void(std::uint32_t)>& visit);

std::vector<Eigen::Index> mask_members(std::uint32_t mask);

/// max ||U(I,J)|| over |I| = n, |J| = m by exhaustive enumeration.
double brute_block_norm(const ComplexMatrix& u, std::size_t n, std::size_t m);

/// s_1..s_N.
std::vector<double> brute_s_profile(const ComplexMatrix& u);

/// ((1 + s_k)/2)^2.
std::vector<double> brute_r_profile(const std::vector<double>& s);

/// S_0..S_{LN-1} of the concatenation [U_1 | ... | U_L].
std::vector<double> brute_multi_profile(std::span<const ComplexMatrix> us);

/// Unitary DFT matrix: F_jk = exp(2 pi i jk / n) / sqrt(n).
ComplexMatrix fourier(std::size_t n);

/// Real rotation by theta in the (0, 1) plane, identity elsewhere.
ComplexMatrix rotation(std::size_t n, double theta);

/// -sum p ln p without clamping, for hand-made vectors.
double plain_entropy(const std::vector<double>& p);

/// Sum of entropies of |U^dagger psi|^2 for psi = v / |v| (v need not be unit).
double entropy_sum_of(std::span<const ComplexMatrix> us, const Eigen::VectorXcd& v);

/// Central finite differences of entropy_sum_of over the 2N real coordinates,
/// packed back as a complex vector (d/dRe + i d/dIm).
Eigen::VectorXcd finite_difference_gradient(std::span<const ComplexMatrix> us,
                                            const Eigen::VectorXcd& psi, double step);

/// Partial sums of the nonincreasing rearrangement.
std::vector<double> sorted_partial_sums(std::vector<double> x);

}  // namespace eurlab::testing
