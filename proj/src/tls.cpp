#include "tlsrand/tls.hpp"

#include <chrono>
#include <cmath>

namespace tlsrand {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Vec residual_of(const TlsProblem& p, const Vec& x) {
    return p.b - matvec(p.a, x);
}

}  // namespace

Mat augmented(const TlsProblem& p) { return with_column(p.a, p.b); }

void validate_problem(const TlsProblem& p) {
    if (p.a.rows() < 1 || p.a.cols() < 1)
        fail(ErrorCode::InvalidArgument, "TLS problem needs m >= 1 and n >= 1");
    if (p.b.size() != p.a.rows())
        fail(ErrorCode::InvalidArgument, "right-hand side length does not match A");
    if (!p.a.all_finite()) fail(ErrorCode::InvalidArgument, "A has non-finite entries");
    for (double v : p.b)
        if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "b has non-finite entries");
}

GenericityReport check_genericity(const TlsProblem& p) {
    validate_problem(p);
    const std::size_t m = p.a.rows(), n = p.a.cols();
    if (m < n) fail(ErrorCode::InvalidArgument, "check_genericity requires m >= n");
    const SvdFactors fa = svd(p.a);
    const SvdFactors fc = svd(augmented(p));
    GenericityReport r;
    r.sigma_tilde_n = fa.s[n - 1];
    // sigma_{n+1} does not exist for m = n and is treated as 0.
    r.sigma_np1 = m >= n + 1 ? fc.s[n] : 0.0;
    r.gap = r.sigma_tilde_n - r.sigma_np1;
    r.generic = r.gap > kGenericityTol * fc.s[0];
    return r;
}

AugmentedSvd augmented_svd(const TlsProblem& p) {
    validate_problem(p);
    const std::size_t n = p.a.cols();
    AugmentedSvd out;
    out.f = svd(augmented(p));
    out.s_full = out.f.s;
    out.s_full.resize(n + 1, 0.0);
    out.v_full = out.f.v.cols() == n + 1 ? out.f.v
                                         : complete_orthonormal_columns(out.f.v, n + 1);
    return out;
}

PartitionedV partition_v(const Mat& v, std::size_t q) {
    if (v.rows() != v.cols() || v.rows() < 2)
        fail(ErrorCode::InvalidArgument, "partition_v expects the full square V");
    const std::size_t n = v.rows() - 1;
    if (q < 1 || q > n) fail(ErrorCode::InvalidArgument, "partition index out of range");
    PartitionedV pv;
    pv.v11 = block(v, 0, 0, n, q);
    pv.v12 = block(v, 0, q, n, n + 1 - q);
    pv.v21 = block(v, n, 0, 1, q);
    pv.v22 = block(v, n, q, 1, n + 1 - q);
    return pv;
}

TlsSolution tls_svd(const TlsProblem& p) {
    const auto t0 = Clock::now();
    const GenericityReport g = check_genericity(p);
    const std::size_t m = p.a.rows(), n = p.a.cols();
    const SvdFactors fc = svd(augmented(p));
    if (!g.generic)
        fail(ErrorCode::NonGeneric, "genericity gap " + std::to_string(g.gap) +
                                        " below threshold; TLS solution not unique");
    TlsSolution sol;
    sol.method = "tls_svd";
    if (m == n) {
        // Square generic case: sigma_{n+1} is treated as 0 and the TLS
        // solution coincides with the linear-system solution.
        sol.sigma_small = 0.0;
        sol.x = solve_spd(matmul_tn(p.a, p.a), matvec_t(p.a, p.b));
    } else {
        const double v22 = fc.v(n, n);
        if (std::abs(v22) <= kV22Tol)
            fail(ErrorCode::DegenerateV22, "v22 entry is numerically zero");
        sol.sigma_small = fc.s[n];
        sol.x.resize(n);
        for (std::size_t i = 0; i < n; ++i) sol.x[i] = -fc.v(i, n) / v22;
    }
    sol.residual = residual_of(p, sol.x);
    sol.elapsed_seconds = seconds_since(t0);
    return sol;
}

TlsSolution tls_closed(const TlsProblem& p) {
    const auto t0 = Clock::now();
    const GenericityReport g = check_genericity(p);
    if (!g.generic)
        fail(ErrorCode::NonGeneric, "genericity gap below threshold; TLS solution not unique");
    const std::size_t n = p.a.cols();
    const double sigma = g.sigma_np1;
    Mat gram = matmul_tn(p.a, p.a);
    for (std::size_t i = 0; i < n; ++i) gram(i, i) -= sigma * sigma;
    // Cholesky failure here signals that the gap is within roundoff; the
    // method errors instead of silently falling back so its tag stays honest.
    TlsSolution sol;
    sol.method = "tls_closed";
    sol.sigma_small = sigma;
    sol.x = solve_spd(gram, matvec_t(p.a, p.b));
    sol.residual = residual_of(p, sol.x);
    sol.elapsed_seconds = seconds_since(t0);
    return sol;
}

TlsSolution ttls(const TlsProblem& p, std::size_t k) {
    const auto t0 = Clock::now();
    validate_problem(p);
    const std::size_t n = p.a.cols();
    if (p.a.rows() < n) fail(ErrorCode::InvalidArgument, "ttls requires m >= n");
    if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "truncation index must be in [1, n]");

    const AugmentedSvd aug = augmented_svd(p);
    const PartitionedV pv = partition_v(aug.v_full, k);

    double v22_norm2 = 0.0;
    for (std::size_t j = 0; j < pv.v22.cols(); ++j) v22_norm2 += pv.v22(0, j) * pv.v22(0, j);
    const double v22_norm = std::sqrt(v22_norm2);
    if (v22_norm <= kV22Tol)
        fail(ErrorCode::NonGenericTruncation, "v22 block is numerically zero at k=" +
                                                  std::to_string(k));

    // Minimum-norm solution, first form: x = -V12 v22ᵀ / ||v22||².
    Vec x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < pv.v12.cols(); ++j) s += pv.v12(i, j) * pv.v22(0, j);
        x[i] = -s / v22_norm2;
    }

    // Second form (V11ᵀ)⁺ v21ᵀ; the two agree whenever v22 is nonzero.
    const Mat x2 = matmul(pinv(transpose(pv.v11)), transpose(pv.v21));
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff += (x[i] - x2(i, 0)) * (x[i] - x2(i, 0));
    if (std::sqrt(diff) > 1e-8 * (1.0 + norm2(x)))
        fail(ErrorCode::FormulaMismatch,
             "the two minimum-norm TTLS forms disagree; truncation splits a singular cluster");

    TlsSolution sol;
    sol.method = "ttls";
    sol.sigma_small = aug.s_full[k];
    sol.x = std::move(x);
    sol.residual = residual_of(p, sol.x);
    sol.elapsed_seconds = seconds_since(t0);
    return sol;
}

}  // namespace tlsrand
