#pragma once

#include <cmath>

#include "tlsrand/decomp.hpp"
#include "tlsrand/mat.hpp"
#include "tlsrand/rng.hpp"
#include "tlsrand/tls.hpp"

namespace tlsrand::testing {

inline double reconstruction_error(const Mat& m, const SvdFactors& f) {
    Mat us = f.u;
    for (std::size_t j = 0; j < f.s.size(); ++j)
        for (std::size_t i = 0; i < us.rows(); ++i) us(i, j) *= f.s[j];
    return frobenius_norm(m - matmul_nt(us, f.v));
}

inline double orthonormality_defect(const Mat& q) {
    return max_abs_diff(matmul_tn(q, q), Mat::identity(q.cols()));
}

/// Random TLS problem that satisfies the genericity condition; deterministic
/// in the seed (bumps a sub-seed until the gap check passes).
inline TlsProblem random_generic_problem(std::uint64_t seed, std::size_t max_m = 60,
                                         std::size_t max_n = 30) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        const RngSeed s = derive_seed(RngSeed{seed}, 7000 + attempt);
        CounterRng pick(s);
        const std::size_t n = 2 + static_cast<std::size_t>(pick.uniform_at(0) * double(max_n - 2));
        const std::size_t m =
            n + 2 + static_cast<std::size_t>(pick.uniform_at(1) * double(max_m - n - 2));
        const Mat a = gaussian_matrix(m, n, derive_seed(s, 1));
        const Vec w = gaussian_vector(n, derive_seed(s, 2));
        const Vec noise = gaussian_vector(m, derive_seed(s, 3));
        Vec b = matvec(a, w);
        for (std::size_t i = 0; i < m; ++i) b[i] += 0.25 * noise[i];
        TlsProblem p{a, b, {}};
        const GenericityReport g = check_genericity(p);
        if (g.generic && g.gap > 1e-3 * g.sigma_tilde_n) return p;
    }
}

}  // namespace tlsrand::testing
