#include "barnesg/barnes.hpp"

#include <cmath>
#include <string>

namespace barnesg {
namespace {

constexpr double kLinearCoeff = 0.5 * (kLog2Pi - 1.0);   // (log 2pi - 1)/2
constexpr double kQuadCoeff = 0.5 * (1.0 + kEulerGamma);  // (1 + gamma)/2

double zeta_minus_one_int(int n)
{
    return n < 1100 ? zeta_int(n) - 1.0 : zeta_minus_one(static_cast<double>(n));
}

bool is_pole_of_g1(ComplexScalar z)
{
    // G(1 + z) vanishes at z = -1, -2, ...
    return z.imag() == 0.0 && z.real() <= -1.0 && z.real() == std::floor(z.real());
}

// (e^{-zu} - 1 + zu - z^2 u^2/2) / (u (2 sinh(u/2))^2)
ComplexScalar lk_integrand(ComplexScalar z, double u)
{
    const ComplexScalar x = z * u;
    if (std::abs(x) < 1.0) {
        // remainder / x^3 = sum_{k>=3} (-1)^k x^{k-3} / k!
        ComplexScalar term{-1.0 / 6.0, 0.0};
        ComplexScalar sum = term;
        for (int k = 4; k < 60; ++k) {
            term *= -x / static_cast<double>(k);
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum))
                break;
        }
        const double half = 0.5 * u;
        const double ratio = half / std::sinh(half);
        return z * z * z * sum * (ratio * ratio);
    }
    const double om = -std::expm1(-u);  // 1 - e^{-u}
    const double denom = u * om * om;
    const ComplexScalar head = std::exp(-(z + 1.0) * u) / denom;
    const ComplexScalar poly = -1.0 + x - 0.5 * x * x;
    return head + poly * (std::exp(-u) / denom);
}

// L(z) = [log(1+z) - z + z^2/2] + sum_{n>=3} (-1)^{n-1} (zeta(n-1) - 1) z^n / n.
// The rearranged sum converges like (|z|/2)^n.
ComplexScalar l_series_sum(ComplexScalar z, double target, long& terms, double& last)
{
    ComplexScalar sum = log1p_remainder(z, 3);
    ComplexScalar zp = z * z;
    terms = 1;
    last = 0.0;
    const double az = std::abs(z);
    for (int n = 3; n < 4000; ++n) {
        zp *= z;
        const double zm1 = zeta_minus_one_int(n - 1);
        const ComplexScalar term = ((n % 2 == 1) ? 1.0 : -1.0) * zm1 * zp / static_cast<double>(n);
        sum += term;
        ++terms;
        last = std::abs(term);
        // zeta(n) - 1 decays at least like (3/4)^n relative to its predecessor
        if (last / (1.0 - 0.75 * az) < target || last == 0.0)
            break;
    }
    return sum;
}

}  // namespace

std::string_view to_string(BarnesRoute route)
{
    switch (route) {
    case BarnesRoute::product:
        return "product";
    case BarnesRoute::series:
        return "series";
    case BarnesRoute::integral:
        return "integral";
    }
    return "unknown";
}

BarnesEvalReport log_barnes_g_product(ComplexScalar z, long n_terms)
{
    require_finite(z, "log_barnes_g_product");
    if (!(z.real() > -1.0))
        throw DomainError("log_barnes_g_product: requires Re z > -1");
    if (n_terms < 1)
        throw ParameterError("log_barnes_g_product: n_terms must be >= 1");

    // sum_{n<=N} [n log(1 + z/n) - z + z^2/(2n)], smallest terms first
    CompensatedSum<ComplexScalar> sum;
    for (long n = n_terms; n >= 1; --n) {
        const double nd = static_cast<double>(n);
        sum.add(nd * log1p_remainder(z / nd, 3));
    }
    // n log(1 + z/n) - z + z^2/(2n) = z^3/(3 n^2) - z^4/(4 n^3) + ...
    const double tail2 = hurwitz_zeta(2.0, static_cast<double>(n_terms) + 1.0);
    const ComplexScalar tail = z * z * z / 3.0 * tail2;
    const double az = std::abs(z);
    const double ratio = az / (static_cast<double>(n_terms) + 1.0);
    const double err = std::pow(az, 4) / 4.0
                       * hurwitz_zeta(3.0, static_cast<double>(n_terms) + 1.0)
                       / (1.0 - ratio);

    const ComplexScalar value = 0.5 * z * kLog2Pi - kQuadCoeff * z * z - 0.5 * z
                                + sum.value() + tail;
    require_finite(value, "log_barnes_g_product");
    return {value, BarnesRoute::product, n_terms, err};
}

BarnesEvalReport log_barnes_g_series(ComplexScalar z, double target)
{
    require_finite(z, "log_barnes_g_series");
    if (!(std::abs(z) < 1.0))
        throw DomainError("log_barnes_g_series: requires |z| < 1");
    long terms = 0;
    double last = 0.0;
    const ComplexScalar l = l_series_sum(z, target, terms, last);
    const ComplexScalar value = kLinearCoeff * z - kQuadCoeff * z * z + l;
    require_finite(value, "log_barnes_g_series");
    return {value, BarnesRoute::series, terms, 2.0 * last + 4e-16 * std::abs(value)};
}

QuadratureResult<ComplexScalar> lk_integral(ComplexScalar z, const QuadratureSpec& spec)
{
    require_finite(z, "lk_integral");
    if (!(z.real() > -1.0))
        throw DomainError("lk_integral: requires Re z > -1");
    if (z == ComplexScalar{})
        return {ComplexScalar{}, 0.0, 1};
    return integrate_semi_infinite([z](double u) { return lk_integrand(z, u); }, spec);
}

BarnesEvalReport log_barnes_g_integral(ComplexScalar z, const QuadratureSpec& spec)
{
    require_finite(z, "log_barnes_g_integral");
    if (!(z.real() > -1.0))
        throw DomainError("log_barnes_g_integral: requires Re z > -1");
    const auto d = lk_integral(z, spec);
    const ComplexScalar value = kLinearCoeff * z - kQuadCoeff * z * z - d.value;
    require_finite(value, "log_barnes_g_integral");
    return {value, BarnesRoute::integral, std::max(1, d.nodes), d.err_estimate};
}

BarnesEvalReport log_barnes_g(ComplexScalar z)
{
    require_finite(z, "log_barnes_g");
    if (is_pole_of_g1(z))
        throw PoleError("log_barnes_g: G(1 + z) vanishes at z = " + std::to_string(z.real()));
    if (std::abs(z) < 0.75)
        return log_barnes_g_series(z);
    if (z.real() > -1.0)
        return log_barnes_g_integral(z);
    // log G(1 + z) = log G(2 + z) - log Gamma(1 + z)
    BarnesEvalReport up = log_barnes_g(z + 1.0);
    up.log_value -= log_gamma(1.0 + z);
    return up;
}

ComplexScalar l_series(ComplexScalar z)
{
    require_finite(z, "l_series");
    if (!(std::abs(z) < 1.0))
        throw DomainError("l_series: requires |z| < 1");
    long terms = 0;
    double last = 0.0;
    return l_series_sum(z, 1e-16, terms, last);
}

double constant_a()
{
    return std::sqrt(std::exp(1.0) / (2.0 * std::numbers::pi));
}

ComplexScalar log_rm_factor(ComplexScalar lambda)
{
    return 2.0 * log_barnes_g(lambda).log_value - log_barnes_g(2.0 * lambda).log_value;
}

ComplexScalar rm_factor(ComplexScalar lambda)
{
    const ComplexScalar v = std::exp(log_rm_factor(lambda));
    require_finite(v, "rm_factor");
    return v;
}

double rm_factor(double lambda)
{
    return rm_factor(ComplexScalar(lambda, 0.0)).real();
}

}  // namespace barnesg
