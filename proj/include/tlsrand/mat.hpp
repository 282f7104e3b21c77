#pragma once

#include <cstddef>
#include <vector>

#include "tlsrand/errors.hpp"

namespace tlsrand {

using Vec = std::vector<double>;

/// Dense real matrix, row-major storage.
///
/// Kernels are written against this one layout; operations that want
/// contiguous columns (QR, Jacobi sweeps) copy into a column-major scratch
/// buffer internally. Instances are immutable by convention once handed to a
/// solver, which is what makes concurrent solves safe.
class Mat {
  public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Mat(std::size_t rows, std::size_t cols, Vec data);

    static Mat identity(std::size_t n);
    static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Mat column(const Vec& v);
    static Mat row(const Vec& v);
    static Mat diag(const Vec& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    double* row_ptr(std::size_t i) noexcept { return data_.data() + i * cols_; }
    const double* row_ptr(std::size_t i) const noexcept { return data_.data() + i * cols_; }

    bool all_finite() const noexcept;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vec data_;
};

Mat transpose(const Mat& a);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(double s, const Mat& a);

/// a * b
Mat matmul(const Mat& a, const Mat& b);
/// aᵀ * b without forming the transpose
Mat matmul_tn(const Mat& a, const Mat& b);
/// a * bᵀ without forming the transpose
Mat matmul_nt(const Mat& a, const Mat& b);

Vec matvec(const Mat& a, const Vec& x);
Vec matvec_t(const Mat& a, const Vec& x);

Mat block(const Mat& a, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols);
Mat hcat(const Mat& a, const Mat& b);
Mat with_column(const Mat& a, const Vec& b);  // [a, b]
Vec column_of(const Mat& a, std::size_t j);
Vec row_of(const Mat& a, std::size_t i);

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);
Vec operator-(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec scaled(double s, const Vec& a);

double frobenius_norm(const Mat& a);
double max_abs(const Mat& a);
double max_abs_diff(const Mat& a, const Mat& b);

}  // namespace tlsrand
