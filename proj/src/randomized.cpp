#include "tlsrand/randomized.hpp"

#include <chrono>
#include <cmath>

namespace tlsrand {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate_rand_config(const TlsProblem& p, const RandConfig& cfg) {
    const std::size_t n = p.a.cols();
    if (cfg.trunc_k < 1 || cfg.trunc_k > cfg.samples_l || cfg.samples_l > n + 1)
        fail(ErrorCode::InvalidArgument, "need 1 <= trunc_k <= samples_l <= n+1");
}

// Truncated minimum-norm solution from the leading right singular vectors of
// the projected matrix: x = (V11ᵀ)⁺ v21ᵀ.
Vec truncated_solution_from_v(const Mat& v, std::size_t n, std::size_t k) {
    const Mat v11 = block(v, 0, 0, n, k);
    const Mat v21 = block(v, n, 0, 1, k);
    const Mat x = matmul(pinv(transpose(v11)), transpose(v21));
    return column_of(x, 0);
}

}  // namespace

TlsSolution rtls(const TlsProblem& p, const RandConfig& cfg) {
    const auto t0 = Clock::now();
    validate_problem(p);
    validate_rand_config(p, cfg);
    const std::size_t n = p.a.cols();
    const std::size_t l = cfg.samples_l;

    const Mat c = augmented(p);
    const Mat ctc = matmul_tn(c, c);
    const Mat omega = gaussian_matrix(n + 1, l, cfg.seed);

    const Mat x_sketch = solve_spd(ctc, omega);
    const QrFactors qr = householder_qr(x_sketch);
    const Mat y = solve_spd(ctc, qr.q);
    const Mat z = matmul_tn(qr.q, y);

    // Z is symmetric positive semidefinite; its eigendecomposition is its SVD
    // and the largest eigenvalue approximates sigma_{n+1}^{-2}.
    const EigFactors ez = eigh(z);
    const Mat v = matmul(qr.q, ez.w);

    const double vn1 = v(n, 0);
    if (std::abs(vn1) <= kV22Tol)
        fail(ErrorCode::DegenerateV22, "rtls: last entry of the leading sketch vector is zero");

    TlsSolution sol;
    sol.method = "rtls";
    sol.sigma_small = ez.lambda[0] > 0.0 ? 1.0 / std::sqrt(ez.lambda[0]) : 0.0;
    sol.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) sol.x[i] = -v(i, 0) / vn1;
    sol.residual = p.b - matvec(p.a, sol.x);
    sol.elapsed_seconds = seconds_since(t0);
    return sol;
}

TlsSolution rttls(const TlsProblem& p, const RandConfig& cfg) {
    const auto t0 = Clock::now();
    validate_problem(p);
    validate_rand_config(p, cfg);
    const std::size_t n = p.a.cols();
    const std::size_t l = cfg.samples_l;
    const std::size_t k = cfg.trunc_k;

    const Mat c = augmented(p);
    const Mat omega = gaussian_matrix(n + 1, l, cfg.seed);
    const Mat y = matmul(c, omega);
    const QrFactors qr = householder_qr(y);
    const Mat z = matmul_tn(qr.q, c);
    const SvdFactors fz = svd(z);

    std::size_t usable = 0;
    const double floor = 1e-14 * frobenius_norm(c);
    for (double s : fz.s)
        if (s > floor) ++usable;
    if (usable < k)
        fail(ErrorCode::RankCollapse, "rttls: sketch has rank " + std::to_string(usable) +
                                          " below truncation " + std::to_string(k));

    TlsSolution sol;
    sol.method = "rttls";
    sol.sigma_small = k < fz.s.size() ? fz.s[k] : 0.0;
    sol.x = truncated_solution_from_v(fz.v, n, k);
    sol.residual = p.b - matvec(p.a, sol.x);
    sol.elapsed_seconds = seconds_since(t0);
    return sol;
}

RangeFinderResult adaptive_range_finder(const Mat& c, const AdaptiveConfig& cfg) {
    if (c.empty()) fail(ErrorCode::InvalidArgument, "adaptive_range_finder on empty matrix");
    if (!(cfg.tolerance_eps > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be > 0");
    if (cfg.num_probes < 1) fail(ErrorCode::InvalidArgument, "need at least one probe");
    const std::size_t m = c.rows(), w = c.cols();
    const std::size_t r = cfg.num_probes;
    const std::size_t max_basis = cfg.max_basis == 0 ? std::min(m, w) : cfg.max_basis;
    const double threshold = cfg.tolerance_eps / kProbeEstimatorFactor;

    const CounterRng probe_stream = CounterRng(cfg.seed).derive(1);
    auto draw_probe = [&](std::size_t index) {
        Vec omega(w);
        CounterRng rng = probe_stream;
        for (std::size_t i = 0; i < w; ++i)
            omega[i] = rng.normal_at(std::uint64_t(index) * w + i);
        return omega;
    };

    std::vector<Vec> probes;
    probes.reserve(r + max_basis);
    for (std::size_t i = 0; i < r; ++i) probes.push_back(matvec(c, draw_probe(i)));

    std::vector<Vec> basis;  // columns of Q
    RangeFinderResult result;

    auto window_max = [&](std::size_t j) {
        double mx = 0.0;
        for (std::size_t i = j; i < j + r; ++i) mx = std::max(mx, norm2(probes[i]));
        return mx;
    };
    auto project_out = [&](Vec& v, std::size_t upto) {
        for (std::size_t kcol = 0; kcol < upto; ++kcol) {
            const double coef = dot(basis[kcol], v);
            for (std::size_t i = 0; i < m; ++i) v[i] -= coef * basis[kcol][i];
        }
    };

    std::size_t j = 0;
    while (window_max(j) >= threshold) {
        if (j == max_basis) {
            result.basis_exhausted = true;
            break;
        }
        // Reorthogonalize the probe being promoted against the whole basis;
        // the incremental updates below keep it close, this removes the drift.
        Vec y = std::move(probes[j]);
        project_out(y, basis.size());
        const double nrm = norm2(y);
        if (nrm == 0.0) break;  // range fully captured in exact arithmetic
        for (std::size_t i = 0; i < m; ++i) y[i] /= nrm;
        basis.push_back(std::move(y));
        ++j;

        Vec fresh = matvec(c, draw_probe(j + r - 1));
        project_out(fresh, basis.size());
        probes.push_back(std::move(fresh));

        const Vec& qj = basis.back();
        for (std::size_t i = j; i + 1 < j + r; ++i) {
            const double coef = dot(qj, probes[i]);
            for (std::size_t row = 0; row < m; ++row) probes[i][row] -= coef * qj[row];
        }
    }

    result.q = Mat(m, basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col)
        for (std::size_t row = 0; row < m; ++row) result.q(row, col) = basis[col][row];
    return result;
}

TlsSolution arttls(const TlsProblem& p, const AdaptiveConfig& cfg) {
    const auto t0 = Clock::now();
    validate_problem(p);
    const std::size_t n = p.a.cols();
    const Mat c = augmented(p);
    const RangeFinderResult rf = adaptive_range_finder(c, cfg);
    const std::size_t j = rf.q.cols();
    if (j == 0)
        fail(ErrorCode::RankCollapse,
             "arttls: adaptive basis is empty (tolerance above the largest probe norm)");

    const Mat z = matmul_tn(rf.q, c);
    const SvdFactors fz = svd(z);
    std::size_t usable = 0;
    const double floor = 1e-14 * frobenius_norm(c);
    for (double s : fz.s)
        if (s > floor) ++usable;
    if (usable < j)
        fail(ErrorCode::RankCollapse, "arttls: projected matrix is rank deficient");

    TlsSolution sol;
    sol.method = "arttls";
    sol.sigma_small = j < fz.s.size() ? fz.s[j] : 0.0;
    sol.x = truncated_solution_from_v(fz.v, n, j);
    sol.residual = p.b - matvec(p.a, sol.x);
    sol.elapsed_seconds = seconds_since(t0);
    return sol;
}

RttlsErrorBound rttls_error_bound(const TlsProblem& p, std::size_t k, std::size_t oversample_p) {
    validate_problem(p);
    const std::size_t n = p.a.cols();
    if (k < 1 || k > n) fail(ErrorCode::InvalidArgument, "target rank out of range");

    const SvdFactors fa = svd(p.a);
    const AugmentedSvd aug = augmented_svd(p);
    const double sigma1 = aug.s_full[0];
    const double sigma_k1 = aug.s_full[k];     // sigma_{k+1}
    const double sigma_q1 = sigma_k1;          // q = k
    const double sigma_tilde_q = fa.s[k - 1];  // sigma-tilde_k
    const double bnorm = norm2(p.b);
    const double root = std::sqrt(double(k + oversample_p) * double(n));

    RttlsErrorBound bound;
    bound.hypothesis_ok = k >= 2 && oversample_p >= 4 &&
                          sigma_tilde_q > sigma_q1 && bnorm > sigma_q1 &&
                          sigma_k1 <= (sigma_tilde_q - sigma_q1) / (6.0 + 54.0 * root);
    bound.general = 12.0 * sigma1 * ((1.0 + 9.0 * root) * sigma_k1 + sigma_q1) /
                    ((sigma_tilde_q - sigma_q1) * (bnorm - sigma_q1));
    bound.specific = 12.0 * sigma1 * (2.0 + 9.0 * root) * sigma_k1 / (sigma_tilde_q * bnorm);
    return bound;
}

std::size_t select_truncation_gcv(const TlsProblem& p, const RandConfig& cfg) {
    validate_problem(p);
    if (cfg.samples_l < 2) fail(ErrorCode::InvalidArgument, "GCV needs samples_l >= 2");
    const std::size_t m = p.a.rows(), n = p.a.cols();
    const std::size_t l = std::min(cfg.samples_l, std::min(m, n));

    // Randomized rank-l SVD of A (sketch, QR, project).
    const Mat omega = gaussian_matrix(n, l, cfg.seed);
    const Mat y = matmul(p.a, omega);
    const QrFactors qr = householder_qr(y);
    const Mat z = matmul_tn(qr.q, p.a);
    const SvdFactors fz = svd(z);
    const Mat u_hat = matmul(qr.q, fz.u);

    // Candidates stop at the numerical rank of the sketch; dividing by
    // roundoff-level singular values would only inject noise directions.
    std::size_t k_max = 0;
    for (double s : fz.s)
        if (s > 1e-12 * fz.s[0]) ++k_max;
    k_max = std::min(k_max, l - 1);
    if (k_max == 0) k_max = 1;

    Vec x(n, 0.0);
    double best = 0.0;
    std::size_t best_k = 1;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const double coef = dot(column_of(u_hat, k - 1), p.b) / fz.s[k - 1];
        for (std::size_t i = 0; i < n; ++i) x[i] += coef * fz.v(i, k - 1);
        const double res = norm2(p.b - matvec(p.a, x));
        const double denom = double(m) - double(k);
        const double g = double(m) * res * res / (denom * denom);
        if (k == 1 || g < best) {
            best = g;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace tlsrand
