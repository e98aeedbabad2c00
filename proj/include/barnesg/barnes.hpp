#pragma once

// log G(1 + z) by three independent routes: the Weierstrass product, the
// Taylor development in zeta values, and the Levy-Khintchine-type integral.
// All values are logarithms; G grows too fast to compare directly.

#include <string_view>

#include "barnesg/num_core.hpp"

namespace barnesg {

enum class BarnesRoute { product, series, integral };

std::string_view to_string(BarnesRoute route);

struct BarnesEvalReport {
    ComplexScalar log_value;
    BarnesRoute route = BarnesRoute::product;
    long terms_or_nodes_used = 1;
    double err_estimate = 0.0;
};

inline constexpr long kDefaultProductTerms = 20000;

/// Product route, truncated after n_terms factors plus the leading
/// z^3/(3 n^2) tail summed analytically. Requires Re z > -1.
BarnesEvalReport log_barnes_g_product(ComplexScalar z, long n_terms = kDefaultProductTerms);

/// Series route, |z| < 1.
BarnesEvalReport log_barnes_g_series(ComplexScalar z, double target = 1e-16);

/// Integral route, Re z > -1.
BarnesEvalReport log_barnes_g_integral(ComplexScalar z, const QuadratureSpec& spec = {});

/// Dispatcher: series for |z| < 0.75, integral for Re z > -1, otherwise the
/// recursion G(2 + z) = Gamma(1 + z) G(1 + z) shifts z into Re z > -1.
BarnesEvalReport log_barnes_g(ComplexScalar z);

/// D(z) = int_0^inf (e^{-zu} - 1 + zu - z^2 u^2 / 2) / (u (2 sinh(u/2))^2) du.
QuadratureResult<ComplexScalar> lk_integral(ComplexScalar z, const QuadratureSpec& spec = {});

/// L(z) = sum_{n>=3} (-1)^{n-1} zeta(n-1) z^n / n, |z| < 1.
ComplexScalar l_series(ComplexScalar z);

/// A = sqrt(e / (2 pi)).
double constant_a();

/// M(lambda) = G(1 + lambda)^2 / G(1 + 2 lambda).
ComplexScalar rm_factor(ComplexScalar lambda);
double rm_factor(double lambda);

/// log M(lambda) = 2 log G(1 + lambda) - log G(1 + 2 lambda).
ComplexScalar log_rm_factor(ComplexScalar lambda);

}  // namespace barnesg
