#pragma once

// Double-exponential quadrature: tanh-sinh on finite intervals, exp-sinh on
// the final [b, inf) tail. Step halving until successive estimates agree.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

#include "barnesg/num_core.hpp"

namespace barnesg {
namespace detail {

template <class T>
bool quad_finite(const T& v)
{
    if constexpr (std::is_floating_point_v<T>)
        return std::isfinite(v);
    else
        return std::isfinite(v.real()) && std::isfinite(v.imag());
}

// Evaluate one rule over a t-range at nodes t = k * h, k in [k_lo, k_hi] with
// stride. `node` maps t to (x, w, skip).
template <class T, class F, class Node>
void de_accumulate(F& f, Node& node, double h, long k_lo, long k_hi,
                   long stride, T& sum, double& l1, int& nodes)
{
    for (long k = k_lo; k <= k_hi; k += stride) {
        double x = 0, w = 0;
        if (!node(k * h, x, w))
            continue;
        T fx = f(x);
        if (!quad_finite(fx))
            throw NumericError("quadrature: integrand not finite at x = "
                               + std::to_string(x));
        sum += w * fx;
        l1 += std::abs(w * fx);
        ++nodes;
    }
}

template <class T, class F, class Node>
QuadratureResult<T> de_refine(F& f, Node node, double t_lo, double t_hi,
                              double target, int max_refinements)
{
    double h = 0.5;
    long k_lo = static_cast<long>(std::floor(t_lo / h));
    long k_hi = static_cast<long>(std::ceil(t_hi / h));
    T sum{};
    double l1 = 0;
    int nodes = 0;
    de_accumulate(f, node, h, k_lo, k_hi, 1, sum, l1, nodes);
    T prev = h * sum;
    double diff = 0;
    for (int level = 1; level <= max_refinements; ++level) {
        h *= 0.5;
        k_lo *= 2;
        k_hi *= 2;
        // only the odd nodes are new
        long first = (k_lo % 2 == 0) ? k_lo + 1 : k_lo;
        de_accumulate(f, node, h, first, k_hi, 2, sum, l1, nodes);
        T cur = h * sum;
        diff = std::abs(cur - prev);
        double floor = 64 * std::numeric_limits<double>::epsilon() * h * l1;
        if (level >= 2 && diff <= std::max(target, floor))
            return {cur, diff, nodes};
        prev = cur;
    }
    throw ConvergenceError("quadrature: target " + std::to_string(target)
                           + " not met after " + std::to_string(max_refinements)
                           + " refinements (last change " + std::to_string(diff) + ")");
}

}  // namespace detail

/// Integrate f over the finite interval [a, b] by tanh-sinh. The endpoints
/// themselves are never evaluated.
template <class F>
auto integrate_interval(F&& f, double a, double b, const QuadratureSpec& spec)
    -> QuadratureResult<std::decay_t<decltype(f(a))>>
{
    using T = std::decay_t<decltype(f(a))>;
    spec.validate();
    if (!(b > a))
        throw DomainError("integrate_interval: need a < b");
    const double width = b - a;
    auto node = [=](double t, double& x, double& w) {
        const double s = std::numbers::pi / 2 * std::sinh(std::abs(t));
        const double e = std::exp(-2 * s);
        const double d = width * e / (1 + e);  // distance to nearest endpoint
        if (d == 0)
            return false;
        x = t >= 0 ? b - d : a + d;
        if (x <= a || x >= b)
            return false;
        w = width * std::numbers::pi * std::cosh(t) * e / ((1 + e) * (1 + e));
        return true;
    };
    return detail::de_refine<T>(f, node, -4.0, 4.0, spec.target_abs_err,
                                spec.max_refinements);
}

/// Integrate f over [a, inf) by exp-sinh, x = a + exp(pi/2 sinh t).
template <class F>
auto integrate_tail(F&& f, double a, const QuadratureSpec& spec)
    -> QuadratureResult<std::decay_t<decltype(f(a))>>
{
    using T = std::decay_t<decltype(f(a))>;
    spec.validate();
    auto node = [=](double t, double& x, double& w) {
        const double g = std::exp(std::numbers::pi / 2 * std::sinh(t));
        if (g == 0 || !std::isfinite(g))
            return false;
        x = a + g;
        if (x <= a)
            return false;
        w = std::numbers::pi / 2 * std::cosh(t) * g;
        return true;
    };
    return detail::de_refine<T>(f, node, -4.5, 3.5, spec.target_abs_err,
                                spec.max_refinements);
}

/// Integrate f over (0, inf). The range is split at u = 1 and at every
/// positive cut point; the last segment is handled by exp-sinh. Integrands
/// must be finite on the open interval (removable singularities at 0 are
/// fine since 0 is never evaluated).
template <class F>
auto integrate_semi_infinite(F&& f, const QuadratureSpec& spec)
    -> QuadratureResult<std::decay_t<decltype(f(1.0))>>
{
    using T = std::decay_t<decltype(f(1.0))>;
    spec.validate();
    std::vector<double> cuts{1.0};
    for (double c : spec.cut_points)
        if (c > 0 && std::isfinite(c))
            cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    QuadratureSpec segment = spec;
    segment.target_abs_err = spec.target_abs_err / static_cast<double>(cuts.size() + 1);

    QuadratureResult<T> total;
    double lo = 0.0;
    for (double c : cuts) {
        auto part = integrate_interval(f, lo, c, segment);
        total.value += part.value;
        total.err_estimate += part.err_estimate;
        total.nodes += part.nodes;
        lo = c;
    }
    auto tail = integrate_tail(f, lo, segment);
    total.value += tail.value;
    total.err_estimate += tail.err_estimate;
    total.nodes += tail.nodes;
    return total;
}

}  // namespace barnesg
