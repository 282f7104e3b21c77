#pragma once

#include "tlsrand/mat.hpp"

namespace tlsrand {

/// Thin SVD: u has orthonormal columns (m x t), s descending nonnegative,
/// v has orthonormal columns (n x t), t = min(m, n).
struct SvdFactors {
    Mat u;
    Vec s;
    Mat v;
};

struct QrFactors {
    Mat q;  // rows x cols, orthonormal columns
    Mat r;  // cols x cols, upper triangular
};

struct EigFactors {
    Mat w;       // orthogonal, columns are eigenvectors
    Vec lambda;  // descending
};

struct MatNorms {
    double two = 0.0;
    double fro = 0.0;
    double inf = 0.0;
};

/// Householder QR with thin Q. Rank deficiency shows up as zero diagonal
/// entries of r; no error is raised here.
QrFactors householder_qr(const Mat& y);

/// One-sided Jacobi SVD with cyclic sweeps after a QR preconditioning step.
/// Singular vectors are sign-normalized: the largest-magnitude entry of each
/// right singular vector is positive, with u flipped to match.
SvdFactors svd(const Mat& m);

/// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
Mat cholesky(const Mat& m);

/// Solve m * x = rhs for SPD m via Cholesky.
Mat solve_spd(const Mat& m, const Mat& rhs);
Vec solve_spd(const Mat& m, const Vec& rhs);

/// Moore-Penrose pseudoinverse via SVD. Zero matrices map to zero.
Mat pinv(const Mat& m);

/// Symmetric eigendecomposition via cyclic Jacobi rotations, eigenvalues
/// sorted descending.
EigFactors eigh(const Mat& sym);

/// (spectral, Frobenius, infinity) norms; the spectral norm is the largest
/// singular value.
MatNorms norms(const Mat& m);
double two_norm(const Mat& m);

/// Extend the orthonormal columns of basis with extra orthonormal columns
/// (deterministically, from coordinate vectors).
Mat complete_orthonormal_columns(const Mat& basis, std::size_t total_cols);

}  // namespace tlsrand
