#pragma once

#include <optional>

#include "tlsrand/tls.hpp"

namespace tlsrand {

struct PerturbReport {
    double delta_ratio = 0.0;  // ||[dA, db]||_F / ||[A, b]||_F
    std::optional<double> observed_rel_err;
    std::optional<double> k_zlwq;  // absent when the Kronecker build is over the cap
    double k_bg = 0.0;
    double k_lj = 0.0;
    double bound_thm = 0.0;  // relative bound on ||dx||/||x||
    double bound_cor = 0.0;  // relative bound on ||dx||/||x||
    double bound_rem = 0.0;  // absolute bound on ||dx||
    double cond_eff = 0.0;
};

/// Both sides of the first-order identity
/// sigma_{n+1} u_{n+1}ᵀ [dA, db] v_{n+1} = rᵀ(db - dA x) / (1 + xᵀx).
struct LemmaIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
};
LemmaIdentity lemma1_identity(const TlsProblem& p, const Mat& da, const Vec& db);

/// First-order relative forward-error bound on ||dx||/||x|| in terms of the
/// shifted Gram inverse norms.
double forward_bound(const TlsProblem& p, const Mat& da, const Vec& db);

/// Companion bound driven by ||[dA, db]||₂ alone.
double forward_bound_corollary(const TlsProblem& p, double pert_two_norm);

/// Looser absolute bound on ||dx||₂ using ||A⁺||₂.
double forward_bound_remark(const TlsProblem& p, const Mat& da, const Vec& db);

/// Condition number via the singular-value closed form, cross-checked against
/// the Cholesky form (which is returned).
double cond_bg(const TlsProblem& p);

/// Condition number from the explicit Kronecker-structured operator with
/// G(x) = [xᵀ, -1] ⊗ I_m.
double cond_lj(const TlsProblem& p);

/// Kronecker-product condition number ||M + N||₂ ||[A,b]||_F / ||x||₂, with
/// the closed-form cross-check M + N = [-xᵀ ⊗ D + (rᵀ ⊗ K)P, D].
double cond_zlwq(const TlsProblem& p);

/// Effective condition number ||A⁺||₂ ||b||₂ / ||x||₂.
double cond_effective(const TlsProblem& p);

/// Full report for one perturbation draw; factorizations are shared across
/// the bounds. compute_zlwq controls whether the Kronecker build is attempted
/// (it is skipped, leaving the field empty, when over the entry cap).
PerturbReport perturb_report(const TlsProblem& p, const Mat& da, const Vec& db,
                             bool compute_zlwq = true, bool compute_lj = true);

}  // namespace tlsrand
