#pragma once

// Moments of |Z_N| = |det(I - U)| for Haar-distributed U in U(N), their
// large-N limits, and the exact Mellin-transform residuals of the gamma and
// beta product representations of |Z_N|.

#include "barnesg/num_core.hpp"

namespace barnesg {

/// Structured outcome of checking one identity: both sides in log form,
/// their difference and the tolerance it was held to.
struct IdentityReport {
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;

    static IdentityReport make(double lhs, double rhs, double tolerance);
};

enum class MomentScaling {
    none,                ///< log E|Z_N|^{2 lambda}
    n_to_lambda_sq,      ///< minus lambda^2 log N
    n_to_half_lambda_sq  ///< minus (lambda^2 / 2) log N
};

struct MomentQuery {
    int n_dim = 1;
    ComplexScalar exponent{0.0, 0.0};  ///< lambda
    MomentScaling scaling = MomentScaling::none;
};

/// log E_N[|Z|^{2 lambda}] = sum_j log Gamma(j) + log Gamma(j + 2 lambda) - 2 log Gamma(j + lambda).
ComplexScalar log_moment_abs2lambda(int n, ComplexScalar lambda);

/// log E[|Z_N|^t] = log_moment_abs2lambda(N, t / 2).
ComplexScalar log_moment_abs_t(int n, ComplexScalar t);

/// Scaled log moment according to query.scaling.
ComplexScalar log_moment(const MomentQuery& query);

/// N^{-lambda^2} E_N[|Z|^{2 lambda}] / M(lambda); tends to 1.
double scaled_moment_ratio(int n, double lambda);

/// Residual of the Mellin transform of prod gamma_j = |Z_N| prod sqrt(gamma_j gamma_j').
IdentityReport ks_gamma_identity_residual(int n, double t, double tolerance = 1e-10);

/// Residual of the Mellin transform of the beta-product representation of |Z_N|.
IdentityReport beta_identity_residual(int n, double t, double tolerance = 1e-10);

/// sum_{j<=N} psi(j), closed form N psi(N+1) - N.
double sum_digamma(int n);
/// Same sum by direct accumulation (for cross-checks).
double sum_digamma_direct(int n);

/// N^{-lambda^2/2} E[(prod gamma_j)^lambda] exp(-lambda sum psi(j)).
double thm14_lhs(int n, double lambda);
double log_thm14_lhs(int n, double lambda);

/// Euler product over primes p <= p_max of
/// (1 - 1/p)^{lambda^2} sum_m (Gamma(lambda + m) / (m! Gamma(lambda)))^2 p^{-m}.
double arithmetic_factor(double lambda, long p_max);

}  // namespace barnesg
