#include "tlsrand/kron.hpp"

#include <cstdlib>
#include <string>

namespace tlsrand {

std::size_t default_size_cap() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("TLSRAND_SIZE_CAP")) {
            const unsigned long long v = std::strtoull(env, nullptr, 10);
            if (v > 0) return static_cast<std::size_t>(v);
        }
        return static_cast<std::size_t>(10000000);
    }();
    return cap;
}

void check_size_cap(std::size_t rows, std::size_t cols, std::size_t size_cap, const char* what) {
    const std::size_t cap = size_cap == 0 ? default_size_cap() : size_cap;
    if (rows != 0 && cols > cap / rows)
        fail(ErrorCode::SizeOverflow, std::string(what) + ": " + std::to_string(rows) + "x" +
                                          std::to_string(cols) + " exceeds entry cap " +
                                          std::to_string(cap));
}

Mat kron(const Mat& a, const Mat& b, std::size_t size_cap) {
    if (a.empty() || b.empty()) fail(ErrorCode::InvalidArgument, "kron of empty matrix");
    check_size_cap(a.rows() * b.rows(), a.cols() * b.cols(), size_cap, "kron");
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const double w = a(ia, ja);
            if (w == 0.0) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    k(ia * b.rows() + ib, ja * b.cols() + jb) = w * b(ib, jb);
        }
    return k;
}

Mat vec(const Mat& a) {
    if (a.empty()) fail(ErrorCode::InvalidArgument, "vec of empty matrix");
    Mat v(a.rows() * a.cols(), 1);
    for (std::size_t c = 0; c < a.cols(); ++c)
        for (std::size_t r = 0; r < a.rows(); ++r) v(c * a.rows() + r, 0) = a(r, c);
    return v;
}

Mat vec_transpose_permutation(std::size_t m, std::size_t n, std::size_t size_cap) {
    if (m == 0 || n == 0) fail(ErrorCode::InvalidArgument, "empty permutation");
    check_size_cap(m * n, m * n, size_cap, "vec_transpose_permutation");
    Mat p(m * n, m * n);
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) p(r * n + c, c * m + r) = 1.0;
    return p;
}

Mat apply_vec_transpose_permutation(const Mat& x, std::size_t m, std::size_t n) {
    if (x.cols() != m * n)
        fail(ErrorCode::InvalidArgument, "apply_vec_transpose_permutation: column count mismatch");
    Mat y(x.rows(), x.cols());
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < m; ++r) {
            const std::size_t dst = c * m + r;  // permuted image of vec(B) slot
            const std::size_t src = r * n + c;
            for (std::size_t i = 0; i < x.rows(); ++i) y(i, dst) = x(i, src);
        }
    return y;
}

}  // namespace tlsrand
