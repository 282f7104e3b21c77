#include "tlsrand/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tlsrand {

namespace {

// Column-major scratch view used by the factorization kernels so that the
// hot inner loops run over contiguous memory.
struct ColBuf {
    std::size_t rows = 0, cols = 0;
    Vec data;

    ColBuf(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    explicit ColBuf(const Mat& m) : rows(m.rows()), cols(m.cols()), data(m.size()) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) data[j * rows + i] = m(i, j);
    }

    double* col(std::size_t j) { return data.data() + j * rows; }
    const double* col(std::size_t j) const { return data.data() + j * rows; }

    Mat to_mat() const {
        Mat m(rows, cols);
        for (std::size_t j = 0; j < cols; ++j) {
            const double* cj = col(j);
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cj[i];
        }
        return m;
    }
};

double dot_n(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void rotate_cols(double* p, double* q, std::size_t n, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        const double pi = p[i], qi = q[i];
        p[i] = c * pi - s * qi;
        q[i] = s * pi + c * qi;
    }
}

constexpr int kMaxSweeps = 60;
constexpr double kJacobiTol = 1e-14;

// One-sided Jacobi on the columns of a (rows >= cols assumed well formed; in
// practice a is the square triangular factor from QR). Returns U in place of
// a's columns, singular values, and accumulated V, all sorted descending.
void one_sided_jacobi(ColBuf& a, ColBuf& v, Vec& sigma) {
    const std::size_t n = a.cols;
    const std::size_t m = a.rows;
    v = ColBuf(n, n);
    for (std::size_t j = 0; j < n; ++j) v.col(j)[j] = 1.0;

    Vec sq(n);
    for (std::size_t j = 0; j < n; ++j) sq[j] = dot_n(a.col(j), a.col(j), m);

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double d = dot_n(a.col(p), a.col(q), m);
                const double scale = std::sqrt(sq[p] * sq[q]);
                if (std::abs(d) <= kJacobiTol * scale || scale == 0.0) continue;
                converged = false;
                const double tau = (sq[q] - sq[p]) / (2.0 * d);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate_cols(a.col(p), a.col(q), m, c, s);
                rotate_cols(v.col(p), v.col(q), n, c, s);
                sq[p] -= t * d;
                sq[q] += t * d;
            }
        }
    }
    if (!converged)
        fail(ErrorCode::ConvergenceFailure, "one-sided Jacobi SVD did not converge in 60 sweeps");

    sigma.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(dot_n(a.col(j), a.col(j), m));

    // Descending order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    ColBuf a2(m, n), v2(n, n);
    Vec s2(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        s2[j] = sigma[src];
        std::copy(a.col(src), a.col(src) + m, a2.col(j));
        std::copy(v.col(src), v.col(src) + n, v2.col(j));
    }
    a = std::move(a2);
    v = std::move(v2);
    sigma = std::move(s2);

    // Normalize the nonzero columns into left singular vectors; exactly zero
    // columns are completed into an orthonormal set afterwards.
    for (std::size_t j = 0; j < n; ++j) {
        if (sigma[j] == 0.0) continue;
        double* cj = a.col(j);
        const double inv = 1.0 / sigma[j];
        for (std::size_t i = 0; i < m; ++i) cj[i] *= inv;
    }
}

// Replace columns flagged as zero with vectors orthonormal to everything else.
void fill_zero_columns(ColBuf& u, const Vec& sigma) {
    const std::size_t m = u.rows, n = u.cols;
    std::size_t candidate = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (sigma[j] != 0.0) continue;
        Vec w(m, 0.0);
        double nrm = 0.0;
        while (candidate < m) {
            std::fill(w.begin(), w.end(), 0.0);
            w[candidate++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == j || (sigma[k] == 0.0 && k > j)) continue;
                    const double proj = dot_n(u.col(k), w.data(), m);
                    const double* ck = u.col(k);
                    for (std::size_t i = 0; i < m; ++i) w[i] -= proj * ck[i];
                }
            }
            nrm = std::sqrt(dot_n(w.data(), w.data(), m));
            if (nrm > 0.5) break;
        }
        if (nrm <= 0.5)
            fail(ErrorCode::ConvergenceFailure, "failed to complete orthonormal basis");
        double* cj = u.col(j);
        for (std::size_t i = 0; i < m; ++i) cj[i] = w[i] / nrm;
    }
}

void apply_sign_convention(Mat& u, Mat& v) {
    for (std::size_t j = 0; j < v.cols(); ++j) {
        double best = 0.0;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < v.rows(); ++i) {
            const double a = std::abs(v(i, j));
            if (a > best) {
                best = a;
                arg = i;
            }
        }
        if (v(arg, j) < 0.0) {
            for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) = -v(i, j);
            for (std::size_t i = 0; i < u.rows(); ++i) u(i, j) = -u(i, j);
        }
    }
}

}  // namespace

QrFactors householder_qr(const Mat& y) {
    if (y.rows() < y.cols())
        fail(ErrorCode::InvalidArgument, "householder_qr requires rows >= cols");
    const std::size_t m = y.rows(), n = y.cols();
    ColBuf a(y);
    Vec beta(n, 0.0);
    ColBuf vs(m, n);  // Householder vectors, column k has length m-k at offset k

    for (std::size_t k = 0; k < n; ++k) {
        double* ak = a.col(k);
        const std::size_t len = m - k;
        double nrm = std::sqrt(dot_n(ak + k, ak + k, len));
        double* vk = vs.col(k);
        if (nrm == 0.0) {
            beta[k] = 0.0;
            continue;
        }
        const double alpha = ak[k] >= 0.0 ? -nrm : nrm;
        for (std::size_t i = 0; i < len; ++i) vk[k + i] = ak[k + i];
        vk[k] -= alpha;
        const double vnorm2 = dot_n(vk + k, vk + k, len);
        if (vnorm2 == 0.0) {
            beta[k] = 0.0;
            ak[k] = alpha;
            continue;
        }
        beta[k] = 2.0 / vnorm2;
        ak[k] = alpha;
        for (std::size_t i = 1; i < len; ++i) ak[k + i] = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) {
            double* aj = a.col(j);
            const double w = beta[k] * dot_n(vk + k, aj + k, len);
            for (std::size_t i = 0; i < len; ++i) aj[k + i] -= w * vk[k + i];
        }
    }

    Mat r(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i <= j; ++i) r(i, j) = a.col(j)[i];

    // Accumulate thin Q by applying the reflectors to the first n columns of I.
    ColBuf q(m, n);
    for (std::size_t j = 0; j < n; ++j) q.col(j)[j] = 1.0;
    for (std::size_t k = n; k-- > 0;) {
        if (beta[k] == 0.0) continue;
        const double* vk = vs.col(k);
        const std::size_t len = m - k;
        for (std::size_t j = 0; j < n; ++j) {
            double* qj = q.col(j);
            const double w = beta[k] * dot_n(vk + k, qj + k, len);
            for (std::size_t i = 0; i < len; ++i) qj[k + i] -= w * vk[k + i];
        }
    }
    return QrFactors{q.to_mat(), std::move(r)};
}

SvdFactors svd(const Mat& m) {
    if (m.empty()) fail(ErrorCode::InvalidArgument, "svd of empty matrix");
    if (!m.all_finite()) fail(ErrorCode::InvalidArgument, "svd input has NaN/Inf entries");

    const bool transposed = m.rows() < m.cols();
    const Mat a = transposed ? transpose(m) : m;

    // QR preconditioning: Jacobi then runs on the small triangular factor,
    // which converges in fewer sweeps and shortens the dot products.
    QrFactors qr = householder_qr(a);
    ColBuf work(qr.r);
    ColBuf vacc(1, 1);
    Vec sigma;
    one_sided_jacobi(work, vacc, sigma);
    fill_zero_columns(work, sigma);

    Mat ur = work.to_mat();
    Mat u = matmul(qr.q, ur);
    Mat v = vacc.to_mat();

    SvdFactors f;
    if (transposed) {
        f.u = std::move(v);
        f.v = std::move(u);
    } else {
        f.u = std::move(u);
        f.v = std::move(v);
    }
    f.s = std::move(sigma);
    apply_sign_convention(f.u, f.v);
    return f;
}

Mat cholesky(const Mat& m) {
    if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "cholesky needs a square matrix");
    const std::size_t n = m.rows();
    Mat l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = m(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= 0.0 || !std::isfinite(d))
            fail(ErrorCode::NotPositiveDefinite, "cholesky pivot <= 0 at index " + std::to_string(j));
        const double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = m(i, j);
            const double* li = l.row_ptr(i);
            const double* lj = l.row_ptr(j);
            for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
            l(i, j) = s / ljj;
        }
    }
    return l;
}

Mat solve_spd(const Mat& m, const Mat& rhs) {
    if (m.rows() != rhs.rows()) fail(ErrorCode::InvalidArgument, "solve_spd shape mismatch");
    const Mat l = cholesky(m);
    const std::size_t n = m.rows(), k = rhs.cols();
    Mat x = rhs;
    // Forward substitution L y = rhs.
    for (std::size_t i = 0; i < n; ++i) {
        const double* li = l.row_ptr(i);
        for (std::size_t c = 0; c < k; ++c) {
            double s = x(i, c);
            for (std::size_t j = 0; j < i; ++j) s -= li[j] * x(j, c);
            x(i, c) = s / li[i];
        }
    }
    // Back substitution Lᵀ x = y.
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t c = 0; c < k; ++c) {
            double s = x(i, c);
            for (std::size_t j = i + 1; j < n; ++j) s -= l(j, i) * x(j, c);
            x(i, c) = s / l(i, i);
        }
    }
    return x;
}

Vec solve_spd(const Mat& m, const Vec& rhs) {
    return column_of(solve_spd(m, Mat::column(rhs)), 0);
}

Mat pinv(const Mat& m) {
    if (m.empty()) fail(ErrorCode::InvalidArgument, "pinv of empty matrix");
    SvdFactors f = svd(m);
    const double cutoff =
        static_cast<double>(std::max(m.rows(), m.cols())) * 2.220446049250313e-16 *
        (f.s.empty() ? 0.0 : f.s[0]);
    // pinv = V diag(1/s) Uᵀ over the numerically nonzero part.
    Mat vs = f.v;
    for (std::size_t j = 0; j < f.s.size(); ++j) {
        const double w = f.s[j] > cutoff ? 1.0 / f.s[j] : 0.0;
        for (std::size_t i = 0; i < vs.rows(); ++i) vs(i, j) *= w;
    }
    return matmul_nt(vs, f.u);
}

EigFactors eigh(const Mat& sym) {
    if (sym.rows() != sym.cols()) fail(ErrorCode::InvalidArgument, "eigh needs a square matrix");
    const std::size_t n = sym.rows();
    Mat a = sym;
    Mat w = Mat::identity(n);
    const double off_tol = 1e-14 * std::max(1e-300, frobenius_norm(sym));

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= off_tol) continue;
                converged = false;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a(p, i), aqi = a(q, i);
                    a(p, i) = c * api - s * aqi;
                    a(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double wip = w(i, p), wiq = w(i, q);
                    w(i, p) = c * wip - s * wiq;
                    w(i, q) = s * wip + c * wiq;
                }
            }
        }
    }
    if (!converged)
        fail(ErrorCode::ConvergenceFailure, "Jacobi eigendecomposition did not converge in 60 sweeps");

    Vec lambda(n);
    for (std::size_t i = 0; i < n; ++i) lambda[i] = a(i, i);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return lambda[x] > lambda[y]; });
    EigFactors f;
    f.lambda.resize(n);
    f.w = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        f.lambda[j] = lambda[order[j]];
        for (std::size_t i = 0; i < n; ++i) f.w(i, j) = w(i, order[j]);
    }
    return f;
}

MatNorms norms(const Mat& m) {
    MatNorms r;
    r.fro = frobenius_norm(m);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
        r.inf = std::max(r.inf, s);
    }
    if (r.fro == 0.0) return r;  // zero matrix: all norms zero
    r.two = svd(m).s[0];
    return r;
}

double two_norm(const Mat& m) {
    if (frobenius_norm(m) == 0.0) return 0.0;
    return svd(m).s[0];
}

Mat complete_orthonormal_columns(const Mat& basis, std::size_t total_cols) {
    if (total_cols < basis.cols() || total_cols > basis.rows())
        fail(ErrorCode::InvalidArgument, "complete_orthonormal_columns: bad target width");
    const std::size_t m = basis.rows();
    ColBuf u(m, total_cols);
    for (std::size_t j = 0; j < basis.cols(); ++j)
        for (std::size_t i = 0; i < m; ++i) u.col(j)[i] = basis(i, j);

    std::size_t candidate = 0;
    for (std::size_t j = basis.cols(); j < total_cols; ++j) {
        Vec w(m, 0.0);
        double nrm = 0.0;
        while (candidate < m) {
            std::fill(w.begin(), w.end(), 0.0);
            w[candidate++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < j; ++k) {
                    const double proj = dot_n(u.col(k), w.data(), m);
                    const double* ck = u.col(k);
                    for (std::size_t i = 0; i < m; ++i) w[i] -= proj * ck[i];
                }
            }
            nrm = std::sqrt(dot_n(w.data(), w.data(), m));
            if (nrm > 0.5) break;
        }
        if (nrm <= 0.5)
            fail(ErrorCode::ConvergenceFailure, "failed to complete orthonormal basis");
        for (std::size_t i = 0; i < m; ++i) u.col(j)[i] = w[i] / nrm;
    }
    return u.to_mat();
}

}  // namespace tlsrand
