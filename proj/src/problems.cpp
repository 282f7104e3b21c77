#include "tlsrand/problems.hpp"

#include <algorithm>
#include <cmath>

namespace tlsrand {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;

Vec random_unit_vector(std::size_t n, RngSeed seed) {
    Vec v = gaussian_vector(n, seed);
    const double nrm = norm2(v);
    for (double& x : v) x /= nrm;
    return v;
}

// w <- (I - 2uuᵀ) w applied in place, column by column.
void apply_reflector_left(const Vec& u, Mat& w) {
    for (std::size_t j = 0; j < w.cols(); ++j) {
        double proj = 0.0;
        for (std::size_t i = 0; i < w.rows(); ++i) proj += u[i] * w(i, j);
        proj *= 2.0;
        for (std::size_t i = 0; i < w.rows(); ++i) w(i, j) -= proj * u[i];
    }
}

}  // namespace

TlsProblem example1(std::size_t m, std::size_t n, double eps_p, RngSeed seed) {
    if (m < n + 1) fail(ErrorCode::InvalidArgument, "example1 requires m >= n+1");
    if (!(eps_p > 0.0 && eps_p < 1.0))
        fail(ErrorCode::InvalidArgument, "example1 requires 0 < eps_p < 1");
    const Vec y = random_unit_vector(m, derive_seed(seed, 1));
    const Vec z = random_unit_vector(n + 1, derive_seed(seed, 2));

    // [D; 0] Zᵀ = D - 2 (Dz) zᵀ stacked over zero rows, then apply Y from the
    // left; the reflectors are never formed.
    Mat c(m, n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double di = i < n ? double(n - i) : 1.0 - eps_p;
        for (std::size_t j = 0; j <= n; ++j)
            c(i, j) = (i == j ? di : 0.0) - 2.0 * di * z[i] * z[j];
    }
    apply_reflector_left(y, c);

    TlsProblem p;
    p.a = block(c, 0, 0, m, n);
    p.b = column_of(c, n);
    return p;
}

TlsProblem example2(std::size_t m) {
    if (m < 3) fail(ErrorCode::InvalidArgument, "example2 requires m >= 3");
    const std::size_t n = m - 2;
    Mat a(m, n, -1.0);
    for (std::size_t i = 0; i < n; ++i) a(i, i) = double(m) - 1.0;
    Vec b(m, -1.0);
    b[m - 2] = double(m) - 1.0;
    TlsProblem p;
    p.a = std::move(a);
    p.b = std::move(b);
    p.x_true = Vec(n, -1.0);
    return p;
}

PronySpec standard_prony_spec(std::size_t m, std::size_t n, double sample_period) {
    // Six conjugate pole pairs, unit residues.
    const double re[6] = {-0.082, -0.147, -0.188, -0.220, -0.247, -0.270};
    const double im[6] = {0.926, 2.874, 4.835, 6.800, 8.767, 10.733};
    PronySpec spec;
    for (int j = 0; j < 6; ++j) {
        spec.poles.push_back({re[j], im[j]});
        spec.poles.push_back({re[j], -im[j]});
        spec.residues.push_back(1.0);
        spec.residues.push_back(1.0);
    }
    spec.sample_period = sample_period;
    spec.m = m;
    spec.n = n;
    return spec;
}

TlsProblem prony(const PronySpec& spec) {
    const std::size_t p_order = spec.poles.size();
    if (p_order == 0 || spec.residues.size() != p_order)
        fail(ErrorCode::InvalidArgument, "prony spec needs one residue per pole");
    if (spec.m < spec.n || spec.m < p_order)
        fail(ErrorCode::InvalidArgument, "prony requires m >= n and m >= p");

    // Match poles into conjugate pairs (real poles stand alone).
    std::vector<bool> used(p_order, false);
    struct Pair {
        PronyPole pole;
        double residue;
        bool conjugate;  // true when the conjugate partner is folded in
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < p_order; ++i) {
        if (used[i]) continue;
        used[i] = true;
        if (spec.poles[i].im == 0.0) {
            pairs.push_back({spec.poles[i], spec.residues[i], false});
            continue;
        }
        bool matched = false;
        for (std::size_t j = i + 1; j < p_order; ++j) {
            if (used[j]) continue;
            if (spec.poles[j].re == spec.poles[i].re && spec.poles[j].im == -spec.poles[i].im &&
                spec.residues[j] == spec.residues[i]) {
                used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched)
            fail(ErrorCode::InvalidArgument, "complex prony poles must occur in conjugate pairs");
        pairs.push_back({spec.poles[i], spec.residues[i], true});
    }

    // Realified samples: a conjugate pair contributes
    // 2 c e^{Re(lambda) T l} cos(Im(lambda) T l).
    const std::size_t samples = spec.m + spec.n;  // y_0 .. y_{m+n-1}
    Vec y(samples, 0.0);
    for (std::size_t l = 0; l < samples; ++l) {
        const double tl = spec.sample_period * double(l);
        double s = 0.0;
        for (const Pair& pr : pairs) {
            const double mag = std::exp(pr.pole.re * tl) * pr.residue;
            s += pr.conjugate ? 2.0 * mag * std::cos(pr.pole.im * tl) : mag;
        }
        y[l] = s;
    }

    // a_j = [y_{j-1}, ..., y_{j+m-2}]ᵀ, A_n = [a_1, ..., a_n], b_n = -a_{n+1}.
    TlsProblem p;
    p.a = Mat(spec.m, spec.n);
    for (std::size_t i = 0; i < spec.m; ++i)
        for (std::size_t j = 0; j < spec.n; ++j) p.a(i, j) = y[j + i];
    p.b = Vec(spec.m);
    for (std::size_t i = 0; i < spec.m; ++i) p.b[i] = -y[spec.n + i];
    return p;
}

namespace {

// Each generator builds the classical discretization of its first-kind
// integral equation; the exact formulas are pinned here since reproducibility
// depends on them. x_true holds the midpoint samples of the continuous
// solution and b = A x_true.

TlsProblem make_consistent(Mat a, Vec x_true) {
    TlsProblem p;
    p.b = matvec(a, x_true);
    p.a = std::move(a);
    p.x_true = std::move(x_true);
    return p;
}

// One-dimensional image restoration model: kernel
// ((cos s + cos t) sin(u)/u)^2 with u = pi (sin s + sin t) on
// [-pi/2, pi/2]^2, midpoint nodes; x(t) = 2 e^{-6(t-0.8)^2} + e^{-2(t+0.5)^2}.
TlsProblem make_shaw(std::size_t n) {
    if (n % 2 != 0) fail(ErrorCode::BadSize, "shaw requires an even size");
    const double h = kPi / double(n);
    Vec s(n), co(n), psi(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = -kPi / 2.0 + (double(i) + 0.5) * h;
        co[i] = std::cos(s[i]);
        psi[i] = kPi * std::sin(s[i]);
    }
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double u = psi[i] + psi[j];
            const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
            const double val = (co[i] + co[j]) * sinc;
            a(i, j) = h * val * val;
        }
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = 2.0 * std::exp(-6.0 * (s[i] - 0.8) * (s[i] - 0.8)) +
               std::exp(-2.0 * (s[i] + 0.5) * (s[i] + 0.5));
    return make_consistent(std::move(a), std::move(x));
}

// Second-derivative (Green's function) problem, Galerkin with box functions:
// A(i,i) = h²((i² - i + 1/4)h - (i - 2/3)), A(i,j) = h²(j - 1/2)((i - 1/2)h - 1)
// for j < i (1-based). Solution f(t) = t.
TlsProblem make_deriv2(std::size_t n) {
    const double h = 1.0 / double(n);
    Mat a(n, n);
    for (std::size_t ii = 1; ii <= n; ++ii) {
        const double i = double(ii);
        a(ii - 1, ii - 1) = h * h * ((i * i - i + 0.25) * h - (i - 2.0 / 3.0));
        for (std::size_t jj = 1; jj < ii; ++jj) {
            const double j = double(jj);
            const double v = h * h * (j - 0.5) * ((i - 0.5) * h - 1.0);
            a(ii - 1, jj - 1) = v;
            a(jj - 1, ii - 1) = v;
        }
    }
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (double(i) + 0.5) * h;
    return make_consistent(std::move(a), std::move(x));
}

// Kernel exp(s cos t), s in [0, pi/2], t in [0, pi], midpoint collocation;
// f(t) = sin t.
TlsProblem make_baart(std::size_t n) {
    const double hs = kPi / (2.0 * double(n));
    const double ht = kPi / double(n);
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double si = (double(i) + 0.5) * hs;
        for (std::size_t j = 0; j < n; ++j) {
            const double tj = (double(j) + 0.5) * ht;
            a(i, j) = ht * std::exp(si * std::cos(tj));
        }
    }
    Vec x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = std::sin((double(j) + 0.5) * ht);
    return make_consistent(std::move(a), std::move(x));
}

// Kernel sqrt(s² + t²) on [0,1]², midpoint nodes; f(t) = t.
TlsProblem make_foxgood(std::size_t n) {
    const double h = 1.0 / double(n);
    Vec t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = (double(i) + 0.5) * h;
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = h * std::sqrt(t[i] * t[i] + t[j] * t[j]);
    return make_consistent(std::move(a), Vec(t));
}

// Gravity surveying at depth d = 0.25: kernel d (d² + (s-t)²)^{-3/2} on
// [0,1]², midpoint nodes; f(t) = sin(pi t) + 0.5 sin(2 pi t).
TlsProblem make_gravity(std::size_t n) {
    const double h = 1.0 / double(n);
    const double depth = 0.25;
    Vec t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = (double(i) + 0.5) * h;
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d2 = depth * depth + (t[i] - t[j]) * (t[i] - t[j]);
            a(i, j) = h * depth / (d2 * std::sqrt(d2));
        }
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(kPi * t[i]) + 0.5 * std::sin(2.0 * kPi * t[i]);
    return make_consistent(std::move(a), std::move(x));
}

// Inverse heat equation (Volterra kernel), lower-triangular Toeplitz with
// first column h k(t_i), k(t) = t^{-3/2} e^{-1/(4t)} / (2 sqrt(pi)).
TlsProblem make_heat(std::size_t n) {
    const double h = 1.0 / double(n);
    Vec kcol(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = (double(i) + 0.5) * h;
        kcol[i] = h * std::pow(t, -1.5) * std::exp(-1.0 / (4.0 * t)) / (2.0 * std::sqrt(kPi));
    }
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) a(i, j) = kcol[i - j];
    // Piecewise bump on the first half of [0, 1], zero afterwards.
    Vec x(n, 0.0);
    for (std::size_t i = 1; i <= n / 2; ++i) {
        const double ti = double(i) * 20.0 / double(n);
        if (ti < 2.0)
            x[i - 1] = 0.75 * ti * ti / 4.0;
        else if (ti < 3.0)
            x[i - 1] = 0.75 + (ti - 2.0) * (3.0 - ti);
        else
            x[i - 1] = 0.75 * std::exp(-(ti - 3.0) * 2.0);
    }
    return make_consistent(std::move(a), std::move(x));
}

// Phillips' famous problem on [-6, 6]. The kernel k(tau) = 1 + cos(pi tau / 3)
// for |tau| < 3 (else 0) is integrated exactly against box functions:
// A(i,j) = (K2(tau+h) - 2 K2(tau) + K2(tau-h)) / h with tau = |i-j| h and K2
// the second antiderivative of the kernel. f(t) has the same shape as k.
TlsProblem make_phillips(std::size_t n) {
    if (n % 4 != 0) fail(ErrorCode::BadSize, "phillips requires a size divisible by 4");
    const double h = 12.0 / double(n);
    const double c = kPi / 3.0;
    const auto k2 = [&](double tau) {
        const double a = std::abs(tau);
        if (a <= 3.0) return tau * tau / 2.0 - 9.0 / (kPi * kPi) * (std::cos(c * tau) - 1.0);
        const double k2_at_3 = 4.5 + 18.0 / (kPi * kPi);
        return k2_at_3 + 3.0 * (a - 3.0);
    };
    Mat a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double tau = double(i > j ? i - j : j - i) * h;
            a(i, j) = (k2(tau + h) - 2.0 * k2(tau) + k2(tau - h)) / h;
        }
    Vec x(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = -6.0 + (double(i) + 0.5) * h;
        if (std::abs(t) < 3.0) x[i] = 1.0 + std::cos(c * t);
    }
    return make_consistent(std::move(a), std::move(x));
}

}  // namespace

TlsProblem ill_posed(const std::string& name, std::size_t m) {
    if (m < 4) fail(ErrorCode::BadSize, "ill-posed generators need m >= 4");
    if (name == "shaw") return make_shaw(m);
    if (name == "baart") return make_baart(m);
    if (name == "deriv2") return make_deriv2(m);
    if (name == "foxgood") return make_foxgood(m);
    if (name == "gravity") return make_gravity(m);
    if (name == "heat") return make_heat(m);
    if (name == "phillips") return make_phillips(m);
    fail(ErrorCode::UnknownProblem, "unknown ill-posed problem '" + name + "'");
}

TlsProblem add_noise(const TlsProblem& p, const NoiseSpec& spec) {
    validate_problem(p);
    if (spec.level < 0.0) fail(ErrorCode::InvalidArgument, "noise level must be >= 0");
    if (spec.level == 0.0) return p;
    const std::size_t m = p.a.rows(), n = p.a.cols();

    Vec zeta = column_of(uniform_pm1_matrix(m, 1, derive_seed(spec.seed, 11)), 0);
    Mat z = uniform_pm1_matrix(m, n, derive_seed(spec.seed, 12));

    const double zeta_scale = spec.level * norm2(p.b) / norm2(zeta);
    const double z_scale = spec.level * frobenius_norm(p.a) / frobenius_norm(z);

    TlsProblem noisy = p;
    for (std::size_t i = 0; i < m; ++i) noisy.b[i] += zeta_scale * zeta[i];
    for (std::size_t i = 0; i < noisy.a.size(); ++i)
        noisy.a.data()[i] += z_scale * z.data()[i];
    return noisy;
}

}  // namespace tlsrand
