#include "barnesg/num_core.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace barnesg {
namespace {

// B_{2k}, k = 1..14
constexpr std::array<double, 14> kBernoulli2k = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
};

// Asymptotic expansions are used once Re(argument) >= kShiftTarget.
constexpr double kShiftTarget = 15.0;
constexpr int kStirlingTerms = 10;

bool is_nonpositive_integer(ComplexScalar z)
{
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

int shift_count(double re)
{
    return re >= kShiftTarget ? 0 : static_cast<int>(std::ceil(kShiftTarget - re));
}

// log Gamma(w) - [(w - 1/2) log w - w + log(2 pi)/2] for Re w >= kShiftTarget.
template <class T>
T stirling_correction(T w)
{
    const T w2 = T(1.0) / (w * w);
    T wp = T(1.0) / w;
    T sum{};
    for (int k = 1; k <= kStirlingTerms; ++k) {
        sum += kBernoulli2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * wp;
        wp *= w2;
    }
    return sum;
}

template <class T>
T log_gamma_stirling(T w)
{
    return (w - 0.5) * std::log(w) - w + 0.5 * kLog2Pi + stirling_correction(w);
}

}  // namespace

void require_finite(ComplexScalar z, const char* what)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NumericError(std::string(what) + ": non-finite value");
}

void require_finite(double x, const char* what)
{
    if (!std::isfinite(x))
        throw NumericError(std::string(what) + ": non-finite value");
}

Tolerance::Tolerance(double abs, double rel) : abs_err(abs), rel_err(rel)
{
    if (!(abs >= 0) || !(rel >= 0) || (abs == 0 && rel == 0))
        throw ParameterError("Tolerance: need abs_err, rel_err >= 0 with one of them positive");
}

bool Tolerance::accepts(double value, double reference) const
{
    return std::abs(value - reference) <= bound(reference);
}

double Tolerance::bound(double reference) const
{
    return std::max(abs_err, rel_err * std::abs(reference));
}

void QuadratureSpec::validate() const
{
    if (!(target_abs_err > 0))
        throw ParameterError("QuadratureSpec: target_abs_err must be positive");
    if (max_refinements < 1)
        throw ParameterError("QuadratureSpec: max_refinements must be >= 1");
}

double harmonic(long n)
{
    if (n < 1)
        throw DomainError("harmonic: N must be >= 1");
    CompensatedSum<double> sum;
    for (long k = n; k >= 1; --k)
        sum.add(1.0 / static_cast<double>(k));
    return sum.value();
}

double partial_zeta2(long n)
{
    if (n < 1)
        throw DomainError("partial_zeta2: N must be >= 1");
    CompensatedSum<double> sum;
    for (long k = n; k >= 1; --k) {
        const double kd = static_cast<double>(k);
        sum.add(1.0 / (kd * kd));
    }
    return sum.value();
}

//---------------------------------------------------------------------------//

ComplexScalar log_gamma(ComplexScalar z)
{
    require_finite(z, "log_gamma");
    if (is_nonpositive_integer(z))
        throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(z.real()));
    const int m = shift_count(z.real());
    // log prod_{k<m} (z + k): modulus by a rescaled running product, argument
    // by summing principal arguments so the branch stays continuous.
    ComplexScalar prod{1.0, 0.0};
    double log_scale = 0.0;
    double arg_sum = 0.0;
    for (int k = 0; k < m; ++k) {
        const ComplexScalar f = z + static_cast<double>(k);
        prod *= f;
        arg_sum += std::arg(f);
        const double a = std::abs(prod);
        if (a > 1e150 || a < 1e-150) {
            log_scale += std::log(a);
            prod /= a;
        }
    }
    const ComplexScalar shift{log_scale + std::log(std::abs(prod)), arg_sum};
    return log_gamma_stirling(z + static_cast<double>(m)) - shift;
}

double log_gamma(double x)
{
    if (x <= 0 && x == std::floor(x))
        throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(x));
    if (!(x > 0))
        throw DomainError("log_gamma(real): requires x > 0");
    if (x == 1.0 || x == 2.0)
        return 0.0;
    const int m = shift_count(x);
    double prod = 1.0;
    for (int k = 0; k < m; ++k)
        prod *= x + k;
    return log_gamma_stirling(x + m) - std::log(prod);
}

ComplexScalar log_gamma_ratio(ComplexScalar x, ComplexScalar a)
{
    require_finite(x, "log_gamma_ratio");
    require_finite(a, "log_gamma_ratio");
    const ComplexScalar xa = x + a;
    if (is_nonpositive_integer(x) || is_nonpositive_integer(xa))
        throw PoleError("log_gamma_ratio: pole of Gamma");
    const int m = shift_count(std::min(x.real(), xa.real()));
    ComplexScalar shift{};
    for (int k = 0; k < m; ++k) {
        const ComplexScalar lo = x + static_cast<double>(k);
        const ComplexScalar hi = xa + static_cast<double>(k);
        const ComplexScalar r = a / lo;
        // log|1 + r| without cancellation; argument difference keeps the branch
        const double re = 0.5 * std::log1p(2 * r.real() + std::norm(r));
        shift += ComplexScalar(re, std::arg(hi) - std::arg(lo));
    }
    const ComplexScalar w = x + static_cast<double>(m);
    const ComplexScalar wa = w + a;
    const ComplexScalar main = (w - 0.5) * log1p(a / w) + a * std::log(wa) - a;
    return main + (stirling_correction(wa) - stirling_correction(w)) - shift;
}

double log_gamma_ratio(double x, double a)
{
    if (!(x > 0) || !(x + a > 0))
        throw DomainError("log_gamma_ratio(real): requires x > 0 and x + a > 0");
    if (a == 0)
        return 0.0;
    const int m = shift_count(std::min(x, x + a));
    CompensatedSum<double> shift;
    for (int k = 0; k < m; ++k)
        shift.add(std::log1p(a / (x + k)));
    const double w = x + m;
    const double main = (w - 0.5) * std::log1p(a / w) + a * std::log(w + a) - a;
    return main + (stirling_correction(w + a) - stirling_correction(w)) - shift.value();
}

ComplexScalar digamma(ComplexScalar z)
{
    require_finite(z, "digamma");
    if (is_nonpositive_integer(z))
        throw PoleError("digamma: pole at non-positive integer");
    const int m = shift_count(z.real());
    ComplexScalar shift{};
    for (int k = 0; k < m; ++k)
        shift += 1.0 / (z + static_cast<double>(k));
    const ComplexScalar w = z + static_cast<double>(m);
    const ComplexScalar w2 = 1.0 / (w * w);
    ComplexScalar wp = w2;
    ComplexScalar series{};
    for (int k = 1; k <= kStirlingTerms; ++k) {
        series += kBernoulli2k[k - 1] / (2.0 * k) * wp;
        wp *= w2;
    }
    return std::log(w) - 0.5 / w - series - shift;
}

double digamma(double x)
{
    if (x <= 0 && x == std::floor(x))
        throw PoleError("digamma: pole at non-positive integer");
    return digamma(ComplexScalar(x, 0.0)).real();
}

double log_beta(double a, double b)
{
    if (!(a > 0) || !(b > 0))
        throw DomainError("log_beta: requires a, b > 0");
    // log Gamma(a) - log Gamma(a + b) + log Gamma(b)
    return log_gamma(b) - log_gamma_ratio(a, b);
}

//---------------------------------------------------------------------------//

double hurwitz_zeta(double s, double q)
{
    if (!(s > 1))
        throw DomainError("hurwitz_zeta: requires s > 1");
    if (!(q > 0))
        throw DomainError("hurwitz_zeta: requires q > 0");
    // Euler-Maclaurin with the head summed directly until q + n is large
    // enough for the Bernoulli tail to converge quickly.
    const double start = std::max(12.0, s);
    const int n = q >= start ? 0 : static_cast<int>(std::ceil(start - q));
    CompensatedSum<double> head;
    for (int k = n - 1; k >= 0; --k)
        head.add(std::pow(q + k, -s));
    const double a = q + n;
    double tail = std::pow(a, 1 - s) / (s - 1) + 0.5 * std::pow(a, -s);
    // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
    double poch = s;              // rising factorial s(s+1)...(s+2j-2)
    double fact = 2.0;            // (2j)!
    double apow = std::pow(a, -s - 1);
    const double a2 = 1.0 / (a * a);
    for (int j = 1; j <= 12; ++j) {
        const double term = kBernoulli2k[j - 1] / fact * poch * apow;
        tail += term;
        if (std::abs(term) < 1e-18 * std::abs(tail))
            break;
        poch *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2.0 * j + 1) * (2.0 * j + 2);
        apow *= a2;
    }
    return head.value() + tail;
}

double zeta_minus_one(double s)
{
    if (!(s > 1))
        throw DomainError("zeta: requires s > 1");
    if (s >= 30) {
        // terms fall off like (k)^{-s}; the sum converges in a handful of terms
        CompensatedSum<double> sum;
        for (int k = 2; k < 1000; ++k) {
            const double t = std::pow(static_cast<double>(k), -s);
            sum.add(t);
            if (t < 1e-18 * sum.value())
                break;
        }
        return sum.value();
    }
    return hurwitz_zeta(s, 2.0);
}

double zeta(double s)
{
    if (!(s > 1))
        throw DomainError("zeta: requires s > 1");
    if (s >= 30)
        return 1.0 + zeta_minus_one(s);
    return hurwitz_zeta(s, 1.0);
}

double zeta_int(int n)
{
    constexpr int kTable = 1100;
    static const std::vector<double> table = [] {
        std::vector<double> t(kTable, 0.0);
        for (int k = 2; k < kTable; ++k)
            t[k] = zeta(static_cast<double>(k));
        return t;
    }();
    if (n < 2)
        throw DomainError("zeta_int: requires n >= 2");
    if (n < kTable)
        return table[n];
    return 1.0 + zeta_minus_one(static_cast<double>(n));
}

//---------------------------------------------------------------------------//

ComplexScalar log1p(ComplexScalar w)
{
    const double re = 0.5 * std::log1p(2 * w.real() + std::norm(w));
    return {re, std::atan2(w.imag(), 1.0 + w.real())};
}

template <class T>
static T exp_neg_remainder_impl(T x, int order)
{
    if (order < 1 || order > 3)
        throw ParameterError("exp_neg_remainder: order must be 1, 2 or 3");
    if (std::abs(x) < 1.0) {
        // sum_{k>=order} (-x)^k / k!
        T term{1.0};
        for (int k = 1; k <= order; ++k)
            term *= -x / static_cast<double>(k);
        T sum = term;
        for (int k = order + 1; k < 60; ++k) {
            term *= -x / static_cast<double>(k);
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum))
                break;
        }
        return sum;
    }
    T poly{1.0};
    if (order >= 2)
        poly -= x;
    if (order >= 3)
        poly += 0.5 * x * x;
    return std::exp(-x) - poly;
}

ComplexScalar exp_neg_remainder(ComplexScalar x, int order)
{
    return exp_neg_remainder_impl(x, order);
}

double exp_neg_remainder(double x, int order)
{
    return exp_neg_remainder_impl(x, order);
}

ComplexScalar log1p_remainder(ComplexScalar x, int order)
{
    if (order != 2 && order != 3)
        throw ParameterError("log1p_remainder: order must be 2 or 3");
    if (std::abs(x) < 0.5) {
        // sum_{k>=order} (-1)^{k-1} x^k / k
        ComplexScalar xp = std::pow(x, order);
        ComplexScalar sum{};
        for (int k = order; k < 80; ++k) {
            const ComplexScalar term = ((k % 2 == 1) ? 1.0 : -1.0) * xp / static_cast<double>(k);
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum))
                break;
            xp *= x;
        }
        return sum;
    }
    ComplexScalar v = log1p(x) - x;
    if (order == 3)
        v += 0.5 * x * x;
    return v;
}

double x_minus_log1p(double x)
{
    if (!(x > -1))
        throw DomainError("x_minus_log1p: requires x > -1");
    if (std::abs(x) < 0.5)
        return -log1p_remainder(ComplexScalar(x, 0.0), 2).real();
    return x - std::log1p(x);
}

}  // namespace barnesg
