#include "tlsrand/perturbation.hpp"

#include <cmath>

#include "tlsrand/kron.hpp"

namespace tlsrand {

namespace {

// Shared factorization work for the bounds: TLS solution, residual, the
// shifted Gram inverse K = (AᵀA - sigma²I)^{-1} and the norms that appear in
// every formula.
struct PerturbWork {
    std::size_t m = 0, n = 0;
    SvdFactors fa;   // SVD of A
    SvdFactors fc;   // SVD of [A, b] (m >= n+1 in every §3 formula)
    double sigma = 0.0;  // sigma_{n+1}
    Vec x;
    Vec r;
    double norm_x = 0.0, norm_b = 0.0, norm_r = 0.0, norm_a2 = 0.0, fro_c = 0.0;
    Mat k;            // (AᵀA - sigma²I)^{-1}
    Mat kat;          // K Aᵀ
    double norm_k = 0.0, norm_kat = 0.0;
};

PerturbWork make_work(const TlsProblem& p) {
    validate_problem(p);
    const std::size_t m = p.a.rows(), n = p.a.cols();
    if (m < n + 1)
        fail(ErrorCode::InvalidArgument, "perturbation formulas require m >= n+1");
    PerturbWork w;
    w.m = m;
    w.n = n;
    w.fa = svd(p.a);
    const Mat c = augmented(p);
    w.fc = svd(c);
    w.fro_c = frobenius_norm(c);
    w.sigma = w.fc.s[n];
    const double gap = w.fa.s[n - 1] - w.sigma;
    if (gap <= kGenericityTol * w.fc.s[0])
        fail(ErrorCode::NonGeneric, "perturbation analysis requires a generic problem");

    const double v22 = w.fc.v(n, n);
    if (std::abs(v22) <= kV22Tol) fail(ErrorCode::DegenerateV22, "v22 is numerically zero");
    w.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) w.x[i] = -w.fc.v(i, n) / v22;
    w.r = p.b - matvec(p.a, w.x);
    w.norm_x = norm2(w.x);
    w.norm_b = norm2(p.b);
    w.norm_r = norm2(w.r);
    w.norm_a2 = w.fa.s[0];
    if (w.norm_x == 0.0)
        fail(ErrorCode::ZeroSolution, "TLS solution is zero; relative bounds are undefined");

    Mat gram = matmul_tn(p.a, p.a);
    for (std::size_t i = 0; i < n; ++i) gram(i, i) -= w.sigma * w.sigma;
    w.k = solve_spd(gram, Mat::identity(n));
    w.kat = matmul_nt(w.k, p.a);
    w.norm_k = two_norm(w.k);
    w.norm_kat = two_norm(w.kat);
    return w;
}

double forward_bound_impl(const PerturbWork& w, const Mat& da, const Vec& db) {
    const double nda = two_norm(da);
    const double ndb = norm2(db);
    const double term_b = (w.norm_b / w.norm_x) * w.norm_kat * (ndb / w.norm_b);
    const double term_a =
        ((w.norm_a2 * w.norm_r / w.norm_x) * w.norm_k + w.norm_a2 * w.norm_kat) *
        (nda / w.norm_a2);
    return term_b + term_a;
}

double forward_bound_corollary_impl(const PerturbWork& w, double pert_two_norm) {
    return (w.norm_kat * std::sqrt(1.0 + w.norm_x * w.norm_x) / w.norm_x +
            w.norm_k * w.norm_r / w.norm_x) *
           pert_two_norm;
}

double forward_bound_remark_impl(const PerturbWork& w, const Mat& da, const Vec& db) {
    const double pinv_a_norm = 1.0 / w.fa.s[w.n - 1];  // A has full column rank when generic
    return w.norm_kat *
           (norm2(db) + pinv_a_norm * w.norm_r * frobenius_norm(da) + w.norm_x * two_norm(da));
}

double cond_bg_impl(const PerturbWork& w) {
    const std::size_t n = w.n;
    // Form (i): sqrt(1+||x||²) ||D~ [V~ᵀ, 0] V [D, 0]ᵀ||₂ ||C||_F / ||x||₂.
    Mat left(n, n + 1);  // D~ [V~ᵀ, 0], last column stays zero
    for (std::size_t i = 0; i < n; ++i) {
        const double di = 1.0 / (w.fa.s[i] * w.fa.s[i] - w.sigma * w.sigma);
        for (std::size_t j = 0; j < n; ++j) left(i, j) = di * w.fa.v(j, i);
    }
    Mat mid = matmul(left, w.fc.v);  // n x (n+1)
    Mat prod(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            prod(i, j) = mid(i, j) * std::sqrt(w.fc.s[j] * w.fc.s[j] + w.sigma * w.sigma);
    const double scale = std::sqrt(1.0 + w.norm_x * w.norm_x) * w.fro_c / w.norm_x;
    const double form_i = scale * two_norm(prod);

    // Form (ii): Cholesky of AᵀA + sigma²(I - 2xxᵀ/(1+||x||²)), then ||K L||₂.
    Mat sym = Mat(n, n);
    {
        // AᵀA = K^{-1} + sigma² I reconstructed from the SVD of A.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double s = 0.0;
                for (std::size_t t = 0; t < n; ++t)
                    s += w.fa.v(i, t) * w.fa.s[t] * w.fa.s[t] * w.fa.v(j, t);
                sym(i, j) = s;
            }
        const double s2 = w.sigma * w.sigma;
        const double w2 = 2.0 / (1.0 + w.norm_x * w.norm_x);
        for (std::size_t i = 0; i < n; ++i) {
            sym(i, i) += s2;
            for (std::size_t j = 0; j < n; ++j) sym(i, j) -= s2 * w2 * w.x[i] * w.x[j];
        }
    }
    const Mat l = cholesky(sym);
    const double form_ii = scale * two_norm(matmul(w.k, l));

    if (std::abs(form_i - form_ii) > 1e-6 * std::max(form_i, form_ii))
        fail(ErrorCode::FormulaMismatch, "the two closed forms of the condition number disagree");
    return form_ii;
}

double cond_lj_impl(const TlsProblem& p, const PerturbWork& w) {
    if (w.norm_r == 0.0)
        fail(ErrorCode::ZeroResidual, "condition formula needs a nonzero residual");
    const std::size_t m = w.m, n = w.n;

    // G(x) = [xᵀ, -1] ⊗ I_m, built explicitly (the build is what the entry
    // cap guards).
    Mat xrow(1, n + 1);
    for (std::size_t i = 0; i < n; ++i) xrow(0, i) = w.x[i];
    xrow(0, n) = -1.0;
    const Mat g = kron(xrow, Mat::identity(m));

    const Vec rhat = scaled(1.0 / w.norm_r, w.r);
    // 2 Aᵀ r̂ r̂ᵀ G  -  Aᵀ G
    const Mat at_g = matmul_tn(p.a, g);                             // n x m(n+1)
    const Mat rt_g = matmul(Mat::row(rhat), g);                     // 1 x m(n+1)
    const Mat at_rhat = Mat::column(matvec_t(p.a, rhat));           // n x 1
    Mat inner = matmul(at_rhat, rt_g);                              // n x m(n+1)
    for (std::size_t i = 0; i < inner.size(); ++i)
        inner.data()[i] = 2.0 * inner.data()[i] - at_g.data()[i];
    // + [I_n ⊗ rᵀ, 0]
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < m; ++t) inner(i, i * m + t) += w.r[t];

    const Mat f = matmul(w.k, inner);
    return two_norm(f) * w.fro_c / w.norm_x;
}

double cond_zlwq_impl(const TlsProblem& p, const PerturbWork& w, std::size_t size_cap) {
    const std::size_t m = w.m, n = w.n;
    check_size_cap(m * n, n + 1, size_cap, "cond_zlwq operator");

    const Vec ax = matvec(p.a, w.x);
    const Mat k_bt = kron(w.k, Mat::row(p.b), size_cap);          // n x nm
    const Mat xt_kat = kron(Mat::row(w.x), w.kat, size_cap);      // n x nm
    const Mat k_axt = kron(w.k, Mat::row(ax), size_cap);          // n x nm
    Mat mleft = k_bt - xt_kat - k_axt;
    Mat mn = hcat(mleft, w.kat);                                  // M, n x m(n+1)

    // N = 2 sigma y (v_{n+1}ᵀ ⊗ u_{n+1}ᵀ) with y = K x.
    const Vec y = matvec(w.k, w.x);
    const Vec u_last = column_of(w.fc.u, n);
    const Vec v_last = column_of(w.fc.v, n);
    const Mat vu = kron(Mat::row(v_last), Mat::row(u_last), size_cap);  // 1 x (n+1)m
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < mn.cols(); ++j)
            mn(i, j) += 2.0 * w.sigma * y[i] * vu(0, j);

    // Cross-check against the closed form [-xᵀ ⊗ D + (rᵀ ⊗ K)P, D] with
    // D = K(Aᵀ + 2xrᵀ/(1+xᵀx)); P applied by index, never materialized.
    {
        Mat ar = transpose(p.a);
        const double wfac = 2.0 / (1.0 + w.norm_x * w.norm_x);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) ar(i, j) += wfac * w.x[i] * w.r[j];
        const Mat d_sigma = matmul(w.k, ar);  // n x m
        const Mat xt_d = kron(Mat::row(w.x), d_sigma, size_cap);  // n x nm
        const Mat rt_k_p =
            apply_vec_transpose_permutation(kron(Mat::row(w.r), w.k, size_cap), m, n);
        Mat closed = hcat(rt_k_p - xt_d, d_sigma);
        const double defect = max_abs_diff(closed, mn);
        if (defect > 1e-10 * std::max(1.0, max_abs(mn)))
            fail(ErrorCode::FormulaMismatch,
                 "Kronecker operator disagrees with its closed form (defect " +
                     std::to_string(defect) + ")");
    }

    return two_norm(mn) * w.fro_c / w.norm_x;
}

double cond_effective_impl(const PerturbWork& w) {
    // ||A⁺||₂ = 1 / (smallest positive singular value of A).
    double smallest = 0.0;
    for (std::size_t i = w.fa.s.size(); i-- > 0;)
        if (w.fa.s[i] > 0.0) {
            smallest = w.fa.s[i];
            break;
        }
    if (smallest == 0.0) fail(ErrorCode::InvalidArgument, "A is the zero matrix");
    return w.norm_b / (smallest * w.norm_x);
}

void validate_perturbation(const PerturbWork& w, const Mat& da, const Vec& db) {
    if (da.rows() != w.m || da.cols() != w.n || db.size() != w.m)
        fail(ErrorCode::InvalidArgument, "perturbation shape mismatch");
}

}  // namespace

LemmaIdentity lemma1_identity(const TlsProblem& p, const Mat& da, const Vec& db) {
    const PerturbWork w = make_work(p);
    validate_perturbation(w, da, db);
    const std::size_t n = w.n;
    const Vec u_last = column_of(w.fc.u, n);
    const Vec v_last = column_of(w.fc.v, n);
    // u_{n+1}ᵀ [dA, db] v_{n+1}
    double mid = 0.0;
    for (std::size_t i = 0; i < w.m; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += da(i, j) * v_last[j];
        row += db[i] * v_last[n];
        mid += u_last[i] * row;
    }
    LemmaIdentity out;
    out.lhs = w.sigma * mid;
    out.rhs = dot(w.r, db - matvec(da, w.x)) / (1.0 + dot(w.x, w.x));
    return out;
}

double forward_bound(const TlsProblem& p, const Mat& da, const Vec& db) {
    const PerturbWork w = make_work(p);
    validate_perturbation(w, da, db);
    return forward_bound_impl(w, da, db);
}

double forward_bound_corollary(const TlsProblem& p, double pert_two_norm) {
    if (pert_two_norm < 0.0) fail(ErrorCode::InvalidArgument, "negative perturbation norm");
    return forward_bound_corollary_impl(make_work(p), pert_two_norm);
}

double forward_bound_remark(const TlsProblem& p, const Mat& da, const Vec& db) {
    const PerturbWork w = make_work(p);
    validate_perturbation(w, da, db);
    return forward_bound_remark_impl(w, da, db);
}

double cond_bg(const TlsProblem& p) { return cond_bg_impl(make_work(p)); }

double cond_lj(const TlsProblem& p) {
    const PerturbWork w = make_work(p);
    return cond_lj_impl(p, w);
}

double cond_zlwq(const TlsProblem& p) {
    const PerturbWork w = make_work(p);
    return cond_zlwq_impl(p, w, 0);
}

double cond_effective(const TlsProblem& p) {
    const PerturbWork w = make_work(p);
    return cond_effective_impl(w);
}

PerturbReport perturb_report(const TlsProblem& p, const Mat& da, const Vec& db,
                             bool compute_zlwq, bool compute_lj) {
    const PerturbWork w = make_work(p);
    validate_perturbation(w, da, db);

    PerturbReport rep;
    const Mat c = augmented(p);
    Mat pert = with_column(da, db);
    rep.delta_ratio = frobenius_norm(pert) / w.fro_c;
    rep.bound_thm = forward_bound_impl(w, da, db);
    rep.bound_cor = forward_bound_corollary_impl(w, two_norm(pert));
    rep.bound_rem = forward_bound_remark_impl(w, da, db);
    rep.k_bg = cond_bg_impl(w);
    if (compute_lj) rep.k_lj = cond_lj_impl(p, w);
    rep.cond_eff = cond_effective_impl(w);
    if (compute_zlwq) {
        bool fits = true;
        try {
            check_size_cap(w.m * w.n, w.n + 1, 0, "cond_zlwq operator");
        } catch (const Error&) {
            fits = false;
        }
        if (fits) rep.k_zlwq = cond_zlwq_impl(p, w, 0);
    }

    // Observed error: solve the perturbed problem and compare.
    TlsProblem hat = p;
    hat.a = p.a + da;
    hat.b = p.b + db;
    const TlsSolution exact{w.x, w.sigma, w.r, "tls_svd", 0.0};
    const TlsSolution pert_sol = tls_svd(hat);
    rep.observed_rel_err = norm2(pert_sol.x - exact.x) / w.norm_x;
    return rep;
}

}  // namespace tlsrand
