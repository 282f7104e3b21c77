#pragma once

#include "tlsrand/mat.hpp"

namespace tlsrand {

/// Entry cap for explicitly built Kronecker-style matrices. The default is
/// 1e7 entries; the TLSRAND_SIZE_CAP environment variable overrides it.
std::size_t default_size_cap();

/// Kronecker product a ⊗ b. Throws SizeOverflow when the result would exceed
/// the entry cap.
Mat kron(const Mat& a, const Mat& b, std::size_t size_cap = 0);

/// Column-stacking vectorization, returned as a column matrix.
Mat vec(const Mat& a);

/// Permutation matrix P with vec(Bᵀ) = P vec(B) for every B of shape m x n.
Mat vec_transpose_permutation(std::size_t m, std::size_t n, std::size_t size_cap = 0);

/// Apply the same permutation to the columns of x from the right, i.e.
/// compute x * P without materializing P. x must have m*n columns.
Mat apply_vec_transpose_permutation(const Mat& x, std::size_t m, std::size_t n);

void check_size_cap(std::size_t rows, std::size_t cols, std::size_t size_cap, const char* what);

}  // namespace tlsrand
