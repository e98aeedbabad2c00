#pragma once

// Scalar special functions, constants and the semi-infinite quadrature engine.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "barnesg/errors.hpp"

namespace barnesg {

using ComplexScalar = std::complex<double>;

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kLog2Pi = 1.83787706640934548356065947281123527;

/// Throws NumericError if either component is NaN or infinite.
void require_finite(ComplexScalar z, const char* what);
void require_finite(double x, const char* what);

/// Mixed absolute / relative accuracy contract.
struct Tolerance {
    double abs_err = 0.0;
    double rel_err = 0.0;

    Tolerance(double abs, double rel);
    static Tolerance absolute(double abs) { return {abs, 0.0}; }
    static Tolerance relative(double rel) { return {0.0, rel}; }

    /// |value - reference| <= max(abs_err, rel_err * |reference|)
    [[nodiscard]] bool accepts(double value, double reference) const;
    [[nodiscard]] double bound(double reference) const;
};

struct QuadratureSpec {
    double target_abs_err = 1e-13;
    int max_refinements = 10;
    /// Interior split points on (0, inf). u = 1 is always a split point.
    std::vector<double> cut_points;

    void validate() const;
};

template <class T>
struct QuadratureResult {
    T value{};
    double err_estimate = 0.0;
    int nodes = 0;
};

//---------------------------------------------------------------------------//
// Constants and elementary sums
//---------------------------------------------------------------------------//

constexpr double euler_gamma() { return kEulerGamma; }

/// H_N = sum_{n<=N} 1/n, summed smallest term first.
double harmonic(long n);

/// sum_{s<=N} 1/s^2, smallest term first.
double partial_zeta2(long n);

//---------------------------------------------------------------------------//
// Gamma family
//---------------------------------------------------------------------------//

/// log Gamma(z), the branch continued analytically from the positive real
/// axis (real for z > 0). Accepts any z that is not a non-positive integer.
ComplexScalar log_gamma(ComplexScalar z);
double log_gamma(double x);  ///< requires x > 0

/// log Gamma(x + a) - log Gamma(x) without forming either term; stays
/// accurate when x is large and a is moderate.
ComplexScalar log_gamma_ratio(ComplexScalar x, ComplexScalar a);
double log_gamma_ratio(double x, double a);  ///< requires x > 0, x + a > 0

ComplexScalar digamma(ComplexScalar z);
double digamma(double x);

/// log B(a, b) for a, b > 0.
double log_beta(double a, double b);

//---------------------------------------------------------------------------//
// Zeta family (real arguments only)
//---------------------------------------------------------------------------//

double zeta(double s);            ///< s > 1
double zeta_minus_one(double s);  ///< zeta(s) - 1 without cancellation, s > 1
/// zeta(n) for integer n >= 2, memoized.
double zeta_int(int n);
/// Hurwitz zeta sum_{k>=0} (q + k)^{-s}, s > 1, q > 0.
double hurwitz_zeta(double s, double q);

//---------------------------------------------------------------------------//
// Cancellation-free Taylor remainders
//---------------------------------------------------------------------------//

ComplexScalar log1p(ComplexScalar w);

/// e^{-x} - sum_{k<order} (-x)^k / k!, for order in {1, 2, 3}.
ComplexScalar exp_neg_remainder(ComplexScalar x, int order);
double exp_neg_remainder(double x, int order);

/// log(1 + x) - x + x^2/2 (order 3) or log(1 + x) - x (order 2).
ComplexScalar log1p_remainder(ComplexScalar x, int order);

/// x - log(1 + x), accurate for small x.
double x_minus_log1p(double x);

/// Neumaier-compensated running sum.
template <class T>
class CompensatedSum {
  public:
    void add(T x)
    {
        T t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] T value() const { return sum_ + comp_; }

  private:
    T sum_{};
    T comp_{};
};

}  // namespace barnesg

#include "barnesg/quadrature.hpp"
