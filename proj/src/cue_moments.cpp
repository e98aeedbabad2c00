#include "barnesg/cue_moments.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "barnesg/barnes.hpp"

namespace barnesg {
namespace {

void require_dim(int n, const char* what)
{
    if (n < 1)
        throw DomainError(std::string(what) + ": N must be >= 1");
}

// log B(a, b) straight from three log-gamma evaluations; kept apart from the
// ratio-based moment sums so the identity residuals compare two routes.
double log_beta_direct(double a, double b)
{
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

// sum_{j<=N} [log Gamma(j + a) - log Gamma(j)] from independent log-gamma calls
double sum_log_gamma_shift_direct(int n, double a)
{
    CompensatedSum<double> sum;
    for (int j = 1; j <= n; ++j)
        sum.add(log_gamma(j + a) - log_gamma(static_cast<double>(j)));
    return sum.value();
}

}  // namespace

IdentityReport IdentityReport::make(double lhs, double rhs, double tolerance)
{
    IdentityReport r;
    r.lhs_log = lhs;
    r.rhs_log = rhs;
    r.residual = lhs - rhs;
    r.tolerance = tolerance;
    r.pass = std::abs(r.residual) <= tolerance;
    return r;
}

ComplexScalar log_moment_abs2lambda(int n, ComplexScalar lambda)
{
    require_dim(n, "log_moment_abs2lambda");
    require_finite(lambda, "log_moment_abs2lambda");
    if (!(lambda.real() > -1.0))
        throw DomainError("log_moment_abs2lambda: requires Re lambda > -1");
    // Gamma(j) Gamma(j + 2l) / Gamma(j + l)^2 as two ratios against Gamma(j)
    CompensatedSum<ComplexScalar> sum;
    for (int j = 1; j <= n; ++j) {
        const ComplexScalar x{static_cast<double>(j), 0.0};
        sum.add(log_gamma_ratio(x, 2.0 * lambda) - 2.0 * log_gamma_ratio(x, lambda));
    }
    return sum.value();
}

ComplexScalar log_moment_abs_t(int n, ComplexScalar t)
{
    require_finite(t, "log_moment_abs_t");
    if (!(t.real() > -1.0))
        throw DomainError("log_moment_abs_t: requires Re t > -1");
    return log_moment_abs2lambda(n, 0.5 * t);
}

ComplexScalar log_moment(const MomentQuery& query)
{
    const ComplexScalar base = log_moment_abs2lambda(query.n_dim, query.exponent);
    const double log_n = std::log(static_cast<double>(query.n_dim));
    const ComplexScalar l2 = query.exponent * query.exponent;
    switch (query.scaling) {
    case MomentScaling::none:
        return base;
    case MomentScaling::n_to_lambda_sq:
        return base - l2 * log_n;
    case MomentScaling::n_to_half_lambda_sq:
        return base - 0.5 * l2 * log_n;
    }
    return base;
}

double scaled_moment_ratio(int n, double lambda)
{
    if (lambda == 0.0) {
        require_dim(n, "scaled_moment_ratio");
        return 1.0;
    }
    const ComplexScalar lam{lambda, 0.0};
    const ComplexScalar log_ratio = log_moment(MomentQuery{n, lam, MomentScaling::n_to_lambda_sq})
                                    - log_rm_factor(lam);
    const double v = std::exp(log_ratio.real());
    require_finite(v, "scaled_moment_ratio");
    return v;
}

IdentityReport ks_gamma_identity_residual(int n, double t, double tolerance)
{
    require_dim(n, "ks_gamma_identity_residual");
    if (!(t > -1.0))
        throw DomainError("ks_gamma_identity_residual: requires t > -1");
    // E[(prod gamma_j)^t] = E|Z_N|^t * prod E[gamma_j^{t/2}]^2
    const double lhs = sum_log_gamma_shift_direct(n, t);
    const double rhs = log_moment_abs_t(n, t).real() + 2.0 * sum_log_gamma_shift_direct(n, 0.5 * t);
    return IdentityReport::make(lhs, rhs, tolerance);
}

IdentityReport beta_identity_residual(int n, double t, double tolerance)
{
    require_dim(n, "beta_identity_residual");
    if (!(t > -1.0))
        throw DomainError("beta_identity_residual: requires t > -1");
    // E[beta_{a,b}^s] = B(a + s, b) / B(a, b) with s = t/2
    const double s = 0.5 * t;
    CompensatedSum<double> rhs;
    rhs.add(n * t * std::log(2.0));
    for (int j = 1; j <= n; ++j) {
        const double a = 0.5 * j;
        rhs.add(log_beta_direct(a + s, a) - log_beta_direct(a, a));
    }
    for (int j = 2; j <= n; ++j) {
        const double a = 0.5 * (j + 1);
        const double b = 0.5 * (j - 1);
        rhs.add(log_beta_direct(a + s, b) - log_beta_direct(a, b));
    }
    const double lhs = log_moment_abs_t(n, t).real();
    return IdentityReport::make(lhs, rhs.value(), tolerance);
}

double sum_digamma(int n)
{
    require_dim(n, "sum_digamma");
    return n * digamma(n + 1.0) - n;
}

double sum_digamma_direct(int n)
{
    require_dim(n, "sum_digamma_direct");
    CompensatedSum<double> sum;
    for (int j = 1; j <= n; ++j)
        sum.add(digamma(static_cast<double>(j)));
    return sum.value();
}

double log_thm14_lhs(int n, double lambda)
{
    require_dim(n, "thm14_lhs");
    if (!(lambda > -1.0))
        throw DomainError("thm14_lhs: requires lambda > -1");
    if (lambda == 0.0)
        return 0.0;
    CompensatedSum<double> sum;
    for (int j = 1; j <= n; ++j)
        sum.add(log_gamma_ratio(static_cast<double>(j), lambda));
    sum.add(-lambda * sum_digamma(n));
    sum.add(-0.5 * lambda * lambda * std::log(static_cast<double>(n)));
    return sum.value();
}

double thm14_lhs(int n, double lambda)
{
    const double v = std::exp(log_thm14_lhs(n, lambda));
    require_finite(v, "thm14_lhs");
    return v;
}

double arithmetic_factor(double lambda, long p_max)
{
    if (!(lambda > 0))
        throw DomainError("arithmetic_factor: requires lambda > 0");
    if (p_max < 2)
        throw DomainError("arithmetic_factor: requires p_max >= 2");
    std::vector<bool> composite(static_cast<std::size_t>(p_max) + 1, false);
    CompensatedSum<double> log_sum;
    const double l2 = lambda * lambda;
    for (long p = 2; p <= p_max; ++p) {
        if (composite[static_cast<std::size_t>(p)])
            continue;
        for (long q = p * p; q <= p_max; q += p)
            composite[static_cast<std::size_t>(q)] = true;
        // sum_{m>=1} c_m^2 p^{-m}, c_m = Gamma(lambda + m) / (m! Gamma(lambda))
        const double inv_p = 1.0 / static_cast<double>(p);
        double c = 1.0;
        double pm = 1.0;
        double inner = 0.0;
        for (int m = 1; m < 100000; ++m) {
            c *= (lambda + m - 1) / m;
            pm *= inv_p;
            const double term = c * c * pm;
            inner += term;
            if (term <= 1e-14 * (1.0 + inner) * 1e-3)
                break;
        }
        log_sum.add(l2 * std::log1p(-inv_p) + std::log1p(inner));
    }
    const double v = std::exp(log_sum.value());
    require_finite(v, "arithmetic_factor");
    return v;
}

}  // namespace barnesg
