#pragma once

#include <optional>
#include <string>

#include "tlsrand/decomp.hpp"
#include "tlsrand/mat.hpp"

namespace tlsrand {

struct TlsProblem {
    Mat a;                       // m x n
    Vec b;                       // length m
    std::optional<Vec> x_true;   // length n when known
};

struct TlsSolution {
    Vec x;
    double sigma_small = 0.0;  // sigma_{n+1}, or sigma_{q+1} for truncated variants
    Vec residual;              // b - A x
    std::string method;
    double elapsed_seconds = 0.0;
};

struct GenericityReport {
    double sigma_tilde_n = 0.0;  // smallest singular value of A
    double sigma_np1 = 0.0;      // smallest singular value of [A, b]
    double gap = 0.0;            // sigma_tilde_n - sigma_np1
    bool generic = false;
};

struct PartitionedV {
    Mat v11;  // n x q
    Mat v12;  // n x (n+1-q)
    Mat v21;  // 1 x q
    Mat v22;  // 1 x (n+1-q)
};

/// Relative gap threshold for the genericity predicate, compared as
/// gap > kGenericityTol * sigma_1([A, b]).
inline constexpr double kGenericityTol = 1e3 * 2.220446049250313e-16;
/// Degeneracy threshold for v22 blocks (absolute, on unit-norm V columns).
inline constexpr double kV22Tol = 1e-10;

Mat augmented(const TlsProblem& p);  // [A, b]

void validate_problem(const TlsProblem& p);

GenericityReport check_genericity(const TlsProblem& p);

/// Classical TLS through the SVD of [A, b]: x = -v12 / v22.
TlsSolution tls_svd(const TlsProblem& p);

/// Closed-form TLS: x = (AᵀA - sigma_{n+1}^2 I)^{-1} Aᵀ b via Cholesky.
TlsSolution tls_closed(const TlsProblem& p);

/// Truncated TLS with truncation index k: the minimum-norm solution
/// x = -V12 v22⁺ from the full SVD of [A, b], cross-checked against the
/// (V11ᵀ)⁺ v21ᵀ form.
TlsSolution ttls(const TlsProblem& p, std::size_t k);

/// Block partition of the full right singular matrix V at column q.
PartitionedV partition_v(const Mat& v, std::size_t q);

/// Full (n+1)x(n+1) right singular matrix of [A, b]; for m <= n the thin V is
/// completed with null-space directions whose singular values are treated as
/// zero.
struct AugmentedSvd {
    SvdFactors f;     // thin factors of [A, b]
    Mat v_full;       // (n+1) x (n+1)
    Vec s_full;       // length n+1, zero-padded when m <= n
};
AugmentedSvd augmented_svd(const TlsProblem& p);

}  // namespace tlsrand
