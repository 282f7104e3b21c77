#pragma once

#include <string>
#include <vector>

#include "tlsrand/rng.hpp"
#include "tlsrand/tls.hpp"

namespace tlsrand {

struct PronyPole {
    double re = 0.0;
    double im = 0.0;
};

struct PronySpec {
    std::vector<PronyPole> poles;   // occur in conjugate pairs
    std::vector<double> residues;   // real, one per pole
    double sample_period = 0.2;
    std::size_t m = 0;
    std::size_t n = 0;
};

struct NoiseSpec {
    double level = 0.0;  // relative noise level
    RngSeed seed;
};

/// Orthogonally disguised diagonal problem: [A, b] = Y [D; 0] Zᵀ with
/// Householder reflectors Y = I - 2yyᵀ, Z = I - 2zzᵀ from random unit
/// vectors and D = diag(n, n-1, ..., 1, 1-eps_p).
TlsProblem example1(std::size_t m, std::size_t n, double eps_p, RngSeed seed);

/// Structured problem with exact TLS solution -[1, ..., 1]ᵀ,
/// sigma_{n+1} = sqrt(m) and sigma_tilde_n = sqrt(2m); n = m - 2.
TlsProblem example2(std::size_t m);

/// Linear prediction system A_n x = b_n built from the sampled exponential
/// signal y_l = sum_j c_j z_j^l with z_j = exp(lambda_j T).
TlsProblem prony(const PronySpec& spec);

/// The six conjugate pole pairs and unit residues used by the reference
/// frequency-estimation experiment.
PronySpec standard_prony_spec(std::size_t m, std::size_t n, double sample_period = 0.2);

/// Discretizations of first-kind integral equations with gradually decaying
/// singular values. name is one of: shaw, baart, deriv2, foxgood, gravity,
/// heat, phillips. b is generated consistently as A * x_true.
TlsProblem ill_posed(const std::string& name, std::size_t m);

/// b <- b + level*||b||₂ * zeta/||zeta||₂ and A <- A + level*||A||_F * Z/||Z||_F
/// with zeta, Z uniform on [-1, 1]. Both relative noise identities hold
/// exactly by construction.
TlsProblem add_noise(const TlsProblem& p, const NoiseSpec& spec);

}  // namespace tlsrand
