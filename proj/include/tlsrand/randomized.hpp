#pragma once

#include "tlsrand/rng.hpp"
#include "tlsrand/tls.hpp"

namespace tlsrand {

struct RandConfig {
    std::size_t samples_l = 10;   // sketch width l
    std::size_t trunc_k = 1;      // truncation index k <= l
    std::size_t oversample_p = 4; // p = l - k where relevant
    RngSeed seed;
};

struct AdaptiveConfig {
    double tolerance_eps = 1e-1;
    std::size_t num_probes = 7;  // the integer r
    RngSeed seed;
    std::size_t max_basis = 0;  // 0 means min(m, n+1)
};

struct RangeFinderResult {
    Mat q;                       // orthonormal columns
    bool basis_exhausted = false;  // max_basis hit before the tolerance passed
};

struct RttlsErrorBound {
    double general = 0.0;   // bound in terms of sigma_{k+1} and sigma_{q+1}
    double specific = 0.0;  // simplified bound for q = k
    bool hypothesis_ok = true;
};

/// Inverse-power sketch TLS: approximates the singular vector of [A, b]
/// belonging to the smallest singular value through (CᵀC)^{-1} and solves
/// x = -v(1:n)/v(n+1) from the projected eigenproblem.
TlsSolution rtls(const TlsProblem& p, const RandConfig& cfg);

/// Randomized truncated TLS: range sketch of C = [A, b], SVD of the projected
/// matrix, and the (V11ᵀ)⁺ v21ᵀ minimum-norm form at truncation k.
TlsSolution rttls(const TlsProblem& p, const RandConfig& cfg);

/// Grow an orthonormal basis until the probe-norm estimator certifies
/// ||C - QQᵀC||₂ <= eps; probe refreshes and reorthogonalization follow the
/// fixed-precision scheme.
RangeFinderResult adaptive_range_finder(const Mat& c, const AdaptiveConfig& cfg);

/// Adaptive randomized truncated TLS: basis from adaptive_range_finder,
/// truncation at the discovered basis size.
TlsSolution arttls(const TlsProblem& p, const AdaptiveConfig& cfg);

/// A-priori relative error bounds for rttls at target rank k with
/// oversampling p (valid under the stated hypothesis on sigma_{k+1}; the
/// bound is returned either way and flagged).
RttlsErrorBound rttls_error_bound(const TlsProblem& p, std::size_t k, std::size_t oversample_p);

/// Truncation parameter from the TSVD GCV function evaluated on a randomized
/// rank-l SVD of A: argmin over k of m ||b - A x_k||² / (m - k)².
std::size_t select_truncation_gcv(const TlsProblem& p, const RandConfig& cfg);

/// Probe-count-to-threshold constant of the norm estimator.
inline constexpr double kProbeEstimatorFactor = 7.9788456080286535588;  // 10 sqrt(2/pi)

}  // namespace tlsrand
