#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tlsrand/decomp.hpp"
#include "tlsrand/io.hpp"
#include "tlsrand/kron.hpp"
#include "tlsrand/mat.hpp"
#include "tlsrand/rng.hpp"

using namespace tlsrand;

namespace {

double svd_reconstruction_error(const Mat& m, const SvdFactors& f) {
    Mat us = f.u;
    for (std::size_t j = 0; j < f.s.size(); ++j)
        for (std::size_t i = 0; i < us.rows(); ++i) us(i, j) *= f.s[j];
    return frobenius_norm(m - matmul_nt(us, f.v));
}

double orthonormality_defect(const Mat& q) {
    return max_abs_diff(matmul_tn(q, q), Mat::identity(q.cols()));
}

Mat random_rank_deficient(std::uint64_t seed, std::size_t m, std::size_t n, std::size_t r) {
    const Mat left = gaussian_matrix(m, r, RngSeed{seed});
    const Mat right = gaussian_matrix(r, n, RngSeed{seed + 101});
    return matmul(left, right);
}

}  // namespace

TEST_CASE("gaussian_matrix moments and determinism") {
    const Mat big = gaussian_matrix(1000, 1000, RngSeed{42});
    double mean = 0.0;
    for (std::size_t i = 0; i < big.size(); ++i) mean += big.data()[i];
    mean /= double(big.size());
    double var = 0.0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        const double d = big.data()[i] - mean;
        var += d * d;
    }
    var /= double(big.size()) - 1.0;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);

    const Mat s1 = gaussian_matrix(1, 1, RngSeed{7});
    const Mat s2 = gaussian_matrix(1, 1, RngSeed{7});
    CHECK(s1(0, 0) == s2(0, 0));

    const Mat a = gaussian_matrix(3, 2, RngSeed{1});
    const Mat b = gaussian_matrix(3, 2, RngSeed{2});
    CHECK(max_abs_diff(a, b) > 0.0);

    const Mat g = gaussian_matrix(5, 3, RngSeed{42});
    CHECK(g.rows() == 5);
    CHECK(g.cols() == 3);
    CHECK(g.all_finite());
}

TEST_CASE("householder_qr basic contracts") {
    const Mat eye = Mat::identity(3);
    const QrFactors fi = householder_qr(eye);
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(std::abs(fi.r(j, j)) - 1.0) < 1e-14);
    CHECK(frobenius_norm(matmul(fi.q, fi.r) - eye) < 1e-14);

    const Mat v = Mat::from_rows({{3.0}, {4.0}});
    const QrFactors fv = householder_qr(v);
    CHECK(std::abs(std::abs(fv.r(0, 0)) - 5.0) < 1e-14);

    const Mat y = gaussian_matrix(20, 6, RngSeed{3});
    const QrFactors fy = householder_qr(y);
    CHECK(orthonormality_defect(fy.q) <= 1e-12);
    CHECK(frobenius_norm(matmul(fy.q, fy.r) - y) <= 1e-12 * std::max(1.0, frobenius_norm(y)));
    for (std::size_t i = 1; i < fy.r.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(fy.r(i, j) == 0.0);
}

TEST_CASE("QR reconstruction property over 200 random matrices") {
    for (int trial = 0; trial < 200; ++trial) {
        CounterRng pick(RngSeed{9000 + std::uint64_t(trial)});
        const std::size_t cols = 1 + std::size_t(pick.uniform_at(0) * 20.0);
        const std::size_t rows = cols + std::size_t(pick.uniform_at(1) * (50.0 - double(cols)));
        const Mat y = gaussian_matrix(rows, cols, RngSeed{500 + std::uint64_t(trial)});
        const QrFactors f = householder_qr(y);
        CHECK(frobenius_norm(matmul(f.q, f.r) - y) <= 1e-12 * std::max(1.0, frobenius_norm(y)));
        CHECK(orthonormality_defect(f.q) <= 1e-12);
    }
}

TEST_CASE("svd on hand-checked matrices") {
    const SvdFactors fd = svd(Mat::from_rows({{3.0, 0.0}, {0.0, 1.0}}));
    CHECK(fd.s[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(fd.s[1] == doctest::Approx(1.0).epsilon(1e-14));

    // Eigenvalues of CᵀC = [[2,1],[1,1]] are (3 ± sqrt(5))/2.
    const Mat c = Mat::from_rows({{1.0, 1.0}, {1.0, 0.0}});
    const SvdFactors fc = svd(c);
    CHECK(fc.s[0] == doctest::Approx(std::sqrt((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-13));
    CHECK(fc.s[1] == doctest::Approx(std::sqrt((3.0 - std::sqrt(5.0)) / 2.0)).epsilon(1e-13));
    CHECK(svd_reconstruction_error(c, fc) <= 1e-12);
}

TEST_CASE("svd reconstruction/ordering property, including rank-deficient") {
    for (int trial = 0; trial < 200; ++trial) {
        CounterRng pick(RngSeed{77000 + std::uint64_t(trial)});
        const std::size_t rows = 1 + std::size_t(pick.uniform_at(0) * 49.0);
        const std::size_t cols = 1 + std::size_t(pick.uniform_at(1) * 19.0);
        Mat m(0, 0);
        if (trial % 3 == 0) {
            const std::size_t r = 1 + std::min(rows, cols) / 2;
            m = random_rank_deficient(4000 + std::uint64_t(trial), rows, cols, r);
        } else {
            m = gaussian_matrix(rows, cols, RngSeed{4000 + std::uint64_t(trial)});
        }
        const SvdFactors f = svd(m);
        REQUIRE(f.s.size() == std::min(rows, cols));
        for (std::size_t i = 0; i + 1 < f.s.size(); ++i) CHECK(f.s[i] >= f.s[i + 1]);
        for (double s : f.s) CHECK(s >= 0.0);
        CHECK(orthonormality_defect(f.u) <= 1e-12);
        CHECK(orthonormality_defect(f.v) <= 1e-12);
        CHECK(svd_reconstruction_error(m, f) <= 1e-12 * std::max(1.0, frobenius_norm(m)));
    }
}

TEST_CASE("svd sign convention is reproducible") {
    const Mat m = gaussian_matrix(12, 5, RngSeed{33});
    const SvdFactors f = svd(m);
    for (std::size_t j = 0; j < f.v.cols(); ++j) {
        double best = 0.0;
        for (std::size_t i = 0; i < f.v.rows(); ++i)
            if (std::abs(f.v(i, j)) > std::abs(best)) best = f.v(i, j);
        CHECK(best > 0.0);
    }
}

TEST_CASE("svd of zero and wide matrices") {
    const SvdFactors fz = svd(Mat(2, 3));
    CHECK(fz.s[0] == 0.0);
    CHECK(fz.s[1] == 0.0);
    CHECK(orthonormality_defect(fz.u) <= 1e-14);
    CHECK(orthonormality_defect(fz.v) <= 1e-14);

    const Mat wide = gaussian_matrix(4, 9, RngSeed{55});
    const SvdFactors fw = svd(wide);
    REQUIRE(fw.s.size() == 4);
    CHECK(svd_reconstruction_error(wide, fw) <= 1e-12 * std::max(1.0, frobenius_norm(wide)));
}

TEST_CASE("cholesky and solve_spd") {
    const Mat eye4 = Mat::identity(4);
    CHECK(max_abs_diff(cholesky(eye4), eye4) == 0.0);

    const Mat a = Mat::from_rows({{4.0, 2.0}, {2.0, 2.0}});
    const Mat l = cholesky(a);
    CHECK(l(0, 0) == doctest::Approx(2.0));
    CHECK(l(1, 0) == doctest::Approx(1.0));
    CHECK(l(1, 1) == doctest::Approx(1.0));
    CHECK(l(0, 1) == 0.0);

    CHECK_THROWS_WITH_AS(cholesky(Mat::from_rows({{1.0, 2.0}, {2.0, 1.0}})),
                         doctest::Contains("pivot"), Error);
    try {
        cholesky(Mat::from_rows({{1.0, 2.0}, {2.0, 1.0}}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPositiveDefinite);
    }

    const Vec e2{0.0, 1.0, 0.0};
    const Vec x1 = solve_spd(Mat::identity(3), e2);
    CHECK(x1[0] == 0.0);
    CHECK(x1[1] == doctest::Approx(1.0));

    const Vec x2 = solve_spd(a, Vec{6.0, 4.0});
    CHECK(x2[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x2[1] == doctest::Approx(1.0).epsilon(1e-12));

    const Mat d = Mat::from_rows({{2.0, 0.0}, {0.0, 3.0}});
    const Mat rhs = Mat::from_rows({{2.0, 0.0}, {0.0, 3.0}});
    CHECK(max_abs_diff(solve_spd(d, rhs), Mat::identity(2)) <= 1e-14);
}

TEST_CASE("pinv identities") {
    const Mat rowv = Mat::from_rows({{3.0, 4.0}});
    const Mat pr = pinv(rowv);
    CHECK(pr.rows() == 2);
    CHECK(pr(0, 0) == doctest::Approx(3.0 / 25.0).epsilon(1e-13));
    CHECK(pr(1, 0) == doctest::Approx(4.0 / 25.0).epsilon(1e-13));

    CHECK(max_abs_diff(pinv(Mat::identity(3)), Mat::identity(3)) <= 1e-13);

    const Mat z = pinv(Mat(2, 3));
    CHECK(z.rows() == 3);
    CHECK(z.cols() == 2);
    CHECK(max_abs(z) == 0.0);

    for (int trial = 0; trial < 40; ++trial) {
        CounterRng pick(RngSeed{88000 + std::uint64_t(trial)});
        const std::size_t rows = 1 + std::size_t(pick.uniform_at(0) * 14.0);
        const std::size_t cols = 1 + std::size_t(pick.uniform_at(1) * 9.0);
        Mat m = trial % 4 == 0 ? random_rank_deficient(600 + trial, rows, cols,
                                                       1 + std::min(rows, cols) / 2)
                               : gaussian_matrix(rows, cols, RngSeed{600 + std::uint64_t(trial)});
        const Mat p = pinv(m);
        const double scale = std::max(1.0, frobenius_norm(m));
        CHECK(frobenius_norm(matmul(matmul(m, p), m) - m) <= 1e-10 * scale);
        CHECK(frobenius_norm(matmul(matmul(p, m), p) - p) <=
              1e-10 * std::max(1.0, frobenius_norm(p)));
        const Mat mp = matmul(m, p);
        const Mat pm = matmul(p, m);
        CHECK(max_abs_diff(mp, transpose(mp)) <= 1e-10);
        CHECK(max_abs_diff(pm, transpose(pm)) <= 1e-10);
    }
}

TEST_CASE("kron, vec and transpose permutation") {
    const Mat swap = Mat::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const Mat k = kron(Mat::identity(2), swap);
    CHECK(k.rows() == 4);
    CHECK(k(0, 1) == 1.0);
    CHECK(k(1, 0) == 1.0);
    CHECK(k(2, 3) == 1.0);
    CHECK(k(3, 2) == 1.0);
    CHECK(k(0, 2) == 0.0);

    const Mat b = Mat::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    const Mat vb = vec(b);
    CHECK(vb(0, 0) == 1.0);
    CHECK(vb(1, 0) == 3.0);
    CHECK(vb(2, 0) == 2.0);
    CHECK(vb(3, 0) == 4.0);

    const Mat r = gaussian_matrix(2, 3, RngSeed{11});
    const Mat p = vec_transpose_permutation(2, 3);
    CHECK(max_abs_diff(matmul(p, vec(r)), vec(transpose(r))) == 0.0);

    // exact 0/1 property for all shapes up to 8x8
    for (std::size_t m = 1; m <= 8; ++m)
        for (std::size_t n = 1; n <= 8; ++n) {
            const Mat bb = gaussian_matrix(m, n, RngSeed{m * 31 + n});
            const Mat pp = vec_transpose_permutation(m, n);
            CHECK(max_abs_diff(matmul(pp, vec(bb)), vec(transpose(bb))) == 0.0);
            // right-application agrees with the explicit matrix
            const Mat x = gaussian_matrix(3, m * n, RngSeed{m * 77 + n});
            CHECK(max_abs_diff(apply_vec_transpose_permutation(x, m, n), matmul(x, pp)) == 0.0);
        }

    CHECK_THROWS_AS(kron(Mat(400, 400, 1.0), Mat(400, 400, 1.0)), Error);
}

TEST_CASE("norms") {
    const MatNorms nd = norms(Mat::from_rows({{3.0, 0.0}, {0.0, 1.0}}));
    CHECK(nd.two == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(nd.fro == doctest::Approx(std::sqrt(10.0)).epsilon(1e-14));
    CHECK(nd.inf == doctest::Approx(3.0));

    const MatNorms nz = norms(Mat(3, 2));
    CHECK(nz.two == 0.0);
    CHECK(nz.fro == 0.0);
    CHECK(nz.inf == 0.0);

    const MatNorms nc = norms(Mat::from_rows({{1.0, 1.0}, {1.0, 0.0}}));
    CHECK(nc.two == doctest::Approx(std::sqrt((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-12));

    for (int trial = 0; trial < 12; ++trial) {
        const Mat m = gaussian_matrix(9, 6, RngSeed{3100 + std::uint64_t(trial)});
        CHECK(norms(m).two == doctest::Approx(svd(m).s[0]).epsilon(1e-12));
    }
}

TEST_CASE("eigh on symmetric matrices") {
    const Mat a = Mat::from_rows({{2.0, 1.0}, {1.0, 1.0}});
    const EigFactors f = eigh(a);
    CHECK(f.lambda[0] == doctest::Approx((3.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-13));
    CHECK(f.lambda[1] == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-13));
    const Mat recon = matmul(matmul(f.w, Mat::diag(f.lambda)), transpose(f.w));
    CHECK(max_abs_diff(recon, a) <= 1e-13);
    CHECK(orthonormality_defect(f.w) <= 1e-13);
}

TEST_CASE("matrix file round trips and error reporting") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "tlsrand_io_test";
    fs::create_directories(dir);

    const Mat m = gaussian_matrix(5, 3, RngSeed{123});
    const std::string csv = (dir / "m.csv").string();
    const std::string mm = (dir / "m.mtx").string();
    save_matrix(m, csv, MatFileFormat::Csv);
    save_matrix(m, mm, MatFileFormat::MatrixMarket);
    CHECK(max_abs_diff(load_matrix(csv), m) == 0.0);
    CHECK(max_abs_diff(load_matrix(mm), m) == 0.0);

    {
        std::ofstream bad(dir / "bad.csv");
        bad << "1.0,2.0\n3.0,nan\n";
    }
    try {
        load_matrix((dir / "bad.csv").string());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    try {
        load_matrix((dir / "missing.csv").string());
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::IoError);
    }
}
