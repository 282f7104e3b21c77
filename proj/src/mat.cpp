#include "tlsrand/mat.hpp"

#include <algorithm>
#include <cmath>

namespace tlsrand {

Mat::Mat(std::size_t rows, std::size_t cols, Vec data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        fail(ErrorCode::InvalidArgument, "matrix data length does not match rows*cols");
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Mat m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) fail(ErrorCode::InvalidArgument, "ragged initializer rows");
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Mat Mat::column(const Vec& v) { return Mat(v.size(), 1, v); }

Mat Mat::row(const Vec& v) { return Mat(1, v.size(), v); }

Mat Mat::diag(const Vec& d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

bool Mat::all_finite() const noexcept {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

Mat transpose(const Mat& a) {
    Mat t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

static void require_same_shape(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorCode::InvalidArgument, "shape mismatch in elementwise matrix op");
}

Mat operator+(const Mat& a, const Mat& b) {
    require_same_shape(a, b);
    Mat r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] += b.data()[i];
    return r;
}

Mat operator-(const Mat& a, const Mat& b) {
    require_same_shape(a, b);
    Mat r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] -= b.data()[i];
    return r;
}

Mat operator*(double s, const Mat& a) {
    Mat r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] *= s;
    return r;
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) fail(ErrorCode::InvalidArgument, "matmul shape mismatch");
    Mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double* ci = c.row_ptr(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* bk = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

Mat matmul_tn(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) fail(ErrorCode::InvalidArgument, "matmul_tn shape mismatch");
    Mat c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double* ak = a.row_ptr(k);
        const double* bk = b.row_ptr(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const double aki = ak[i];
            if (aki == 0.0) continue;
            double* ci = c.row_ptr(i);
            for (std::size_t j = 0; j < b.cols(); ++j) ci[j] += aki * bk[j];
        }
    }
    return c;
}

Mat matmul_nt(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) fail(ErrorCode::InvalidArgument, "matmul_nt shape mismatch");
    Mat c(a.rows(), b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row_ptr(i);
        for (std::size_t j = 0; j < b.rows(); ++j) {
            const double* bj = b.row_ptr(j);
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += ai[k] * bj[k];
            c(i, j) = s;
        }
    }
    return c;
}

Vec matvec(const Mat& a, const Vec& x) {
    if (a.cols() != x.size()) fail(ErrorCode::InvalidArgument, "matvec shape mismatch");
    Vec y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double* ai = a.row_ptr(i);
        double s = 0.0;
        for (std::size_t k = 0; k < a.cols(); ++k) s += ai[k] * x[k];
        y[i] = s;
    }
    return y;
}

Vec matvec_t(const Mat& a, const Vec& x) {
    if (a.rows() != x.size()) fail(ErrorCode::InvalidArgument, "matvec_t shape mismatch");
    Vec y(a.cols(), 0.0);
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const double xk = x[k];
        if (xk == 0.0) continue;
        const double* ak = a.row_ptr(k);
        for (std::size_t j = 0; j < a.cols(); ++j) y[j] += xk * ak[j];
    }
    return y;
}

Mat block(const Mat& a, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols) {
    if (row0 + rows > a.rows() || col0 + cols > a.cols())
        fail(ErrorCode::InvalidArgument, "block out of range");
    Mat b(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) b(i, j) = a(row0 + i, col0 + j);
    return b;
}

Mat hcat(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) fail(ErrorCode::InvalidArgument, "hcat row mismatch");
    Mat c(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

Mat with_column(const Mat& a, const Vec& b) { return hcat(a, Mat::column(b)); }

Vec column_of(const Mat& a, std::size_t j) {
    Vec v(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) v[i] = a(i, j);
    return v;
}

Vec row_of(const Mat& a, std::size_t i) {
    return Vec(a.row_ptr(i), a.row_ptr(i) + a.cols());
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "dot length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "vector length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "vector length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec scaled(double s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

double frobenius_norm(const Mat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * a.data()[i];
    return std::sqrt(s);
}

double max_abs(const Mat& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i]));
    return m;
}

double max_abs_diff(const Mat& a, const Mat& b) {
    require_same_shape(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
        case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorCode::NonGeneric: return "NonGeneric";
        case ErrorCode::DegenerateV22: return "DegenerateV22";
        case ErrorCode::NonGenericTruncation: return "NonGenericTruncation";
        case ErrorCode::RankCollapse: return "RankCollapse";
        case ErrorCode::BasisExhausted: return "BasisExhausted";
        case ErrorCode::SizeOverflow: return "SizeOverflow";
        case ErrorCode::ZeroSolution: return "ZeroSolution";
        case ErrorCode::ZeroResidual: return "ZeroResidual";
        case ErrorCode::FormulaMismatch: return "FormulaMismatch";
        case ErrorCode::HypothesisViolated: return "HypothesisViolated";
        case ErrorCode::UnknownProblem: return "UnknownProblem";
        case ErrorCode::BadSize: return "BadSize";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

}  // namespace tlsrand
