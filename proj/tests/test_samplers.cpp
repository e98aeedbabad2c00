#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

#include "barnesg/cue_moments.hpp"
#include "barnesg/samplers.hpp"

using namespace barnesg;
using doctest::Approx;

namespace {

template <class Draw>
std::vector<double> draws(long n, RngStream& rng, Draw draw)
{
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out)
        x = draw(rng);
    return out;
}

bool within_3se(const SampleStats& s, double expected)
{
    return std::abs(s.mean - expected) <= 3.0 * s.std_error;
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct")
{
    RngStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
    bool differ_c = false;
    bool differ_d = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x > 0.0);
        CHECK(x < 1.0);
        differ_c |= x != c.uniform();
        differ_d |= x != d.uniform();
    }
    CHECK(differ_c);
    CHECK(differ_d);
    CHECK(a.seed() == 42);
    CHECK(c.stream_id() == 1);

    RngStream r1(7, 3), r2(7, 3);
    const auto s1 = empirical_mellin(draws(2000, r1, [](RngStream& r) { return gamma_sample(2.5, r); }), 1.0);
    const auto s2 = empirical_mellin(draws(2000, r2, [](RngStream& r) { return gamma_sample(2.5, r); }), 1.0);
    CHECK(s1.mean == s2.mean);
    CHECK(s1.variance == s2.variance);
}

TEST_CASE("sample statistics")
{
    const std::vector<double> c(10, 3.0);
    const auto s = empirical_mellin(c, 2.0);
    CHECK(s.mean == Approx(9.0).epsilon(1e-15));
    CHECK(s.std_error == 0.0);
    const auto l = empirical_laplace(c, 0.0);
    CHECK(l.mean == 1.0);
    CHECK(l.std_error == 0.0);
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto t = SampleStats::of(v);
    CHECK(t.n == 4);
    CHECK(t.mean == Approx(2.5));
    CHECK(t.variance == Approx(5.0 / 3.0));
    CHECK(t.std_error == Approx(std::sqrt(5.0 / 12.0)));
    CHECK_THROWS_AS(SampleStats::of(std::vector<double>{}), ParameterError);
    CHECK_THROWS_AS(empirical_laplace(std::vector<double>{}, 1.0), ParameterError);
    CHECK_THROWS_AS(empirical_mellin(std::vector<double>{1.0, -1.0}, 0.5), DomainError);
}

TEST_CASE("gamma sampler")
{
    RngStream rng(1, 0);
    const auto g3 = draws(100000, rng, [](RngStream& r) { return gamma_sample(3.0, r); });
    CHECK(within_3se(empirical_mellin(g3, 1.0), 3.0));
    const auto g2 = draws(100000, rng, [](RngStream& r) { return gamma_sample(2.0, r); });
    CHECK(within_3se(empirical_laplace(g2, 1.0), 0.25));
    CHECK(within_3se(empirical_mellin(g2, 1.0), 2.0));
    const auto g1 = draws(100000, rng, [](RngStream& r) { return gamma_sample(1.0, r); });
    const auto ks = ks_one_sample(g1, [](double x) { return -std::expm1(-x); });
    CHECK(ks.pass);
    CHECK(ks.threshold == Approx(1.628 / std::sqrt(1e5)).epsilon(1e-3));
    // shape boost branch
    const auto gh = draws(100000, rng, [](RngStream& r) { return gamma_sample(0.5, r); });
    CHECK(std::all_of(gh.begin(), gh.end(), [](double x) { return x > 0; }));
    CHECK(within_3se(empirical_mellin(gh, 1.0), 0.5));
    CHECK_THROWS_AS(gamma_sample(0.0, rng), ParameterError);
    CHECK_THROWS_AS(gamma_sample(-2.0, rng), ParameterError);
}

TEST_CASE("beta sampler")
{
    RngStream rng(2, 0);
    const auto b23 = draws(100000, rng, [](RngStream& r) { return beta_sample(2.0, 3.0, r); });
    CHECK(within_3se(empirical_mellin(b23, 1.0), 0.4));
    const auto bh = draws(100000, rng, [](RngStream& r) { return beta_sample(0.5, 0.5, r); });
    CHECK(std::all_of(bh.begin(), bh.end(), [](double x) { return x > 0 && x < 1; }));
    CHECK(within_3se(empirical_mellin(bh, 0.5), 2.0 / std::numbers::pi));
    // beta(a, b) and 1 - beta(b, a) agree in law
    auto b32 = draws(100000, rng, [](RngStream& r) { return 1.0 - beta_sample(3.0, 2.0, r); });
    const auto s1 = empirical_mellin(b23, 1.0);
    const auto s2 = empirical_mellin(b32, 1.0);
    CHECK(std::abs(s1.mean - s2.mean) <= 3.0 * std::hypot(s1.std_error, s2.std_error));
    CHECK_THROWS_AS(beta_sample(1.0, 0.0, rng), ParameterError);
}

TEST_CASE("beta product for |Z_N|")
{
    RngStream rng(3, 0);
    for (int n : {1, 4}) {
        CAPTURE(n);
        const auto z = draws(100000, rng, [n](RngStream& r) { return sample_abs_z_beta(n, r); });
        CHECK(std::all_of(z.begin(), z.end(), [n](double x) { return x > 0 && x <= std::ldexp(1.0, n); }));
        CHECK(within_3se(empirical_mellin(z, 2.0), n + 1.0));
    }
    CHECK_THROWS_AS(sample_abs_z_beta(0, rng), ParameterError);
}

TEST_CASE("Haar |det(I - U)|")
{
    RngStream rng(4, 0);
    const auto z1 = draws(100000, rng, [](RngStream& r) { return sample_haar_abs_det(1, r); });
    CHECK(std::all_of(z1.begin(), z1.end(), [](double x) { return x >= 0 && x <= 2.0 + 1e-12; }));
    CHECK(within_3se(empirical_mellin(z1, 2.0), 2.0));
    const auto z8 = draws(100000, rng, [](RngStream& r) { return sample_haar_abs_det(8, r); });
    CHECK(within_3se(empirical_mellin(z8, 2.0), 9.0));
    CHECK(within_3se(empirical_mellin(z8, 1.0), std::exp(log_moment_abs_t(8, 1.0).real())));
    CHECK_THROWS_AS(sample_haar_abs_det(0, rng), ParameterError);
    CHECK_THROWS_AS(sample_haar_abs_det(kMaxHaarDim + 1, rng), ParameterError);
}

TEST_CASE("beta product and Haar agree in law at N = 8")
{
    RngStream rb(5, 0), rh(5, 1);
    const auto lb = draws(100000, rb, [](RngStream& r) { return log_abs_z_beta_sample(8, r); });
    const auto lh = draws(100000, rh, [](RngStream& r) { return std::log(sample_haar_abs_det(8, r)); });
    const auto ks = ks_two_sample(lb, lh, 0.01);
    CAPTURE(ks.statistic);
    CHECK(ks.pass);
}

TEST_CASE("gamma-product identity in law at N = 8, log-mean form")
{
    const int n = 8;
    const long m = 200000;
    RngStream rl(6, 0), rr(6, 1);
    // log prod gamma_j
    const auto lhs = draws(m, rl, [n](RngStream& r) {
        double acc = 0;
        for (int j = 1; j <= n; ++j)
            acc += std::log(gamma_sample(j, r));
        return acc;
    });
    // log |Z_8| + (1/2) sum log(gamma_j gamma'_j)
    const auto rhs = draws(m, rr, [n](RngStream& r) {
        double acc = std::log(sample_haar_abs_det(n, r));
        for (int j = 1; j <= n; ++j)
            acc += 0.5 * (std::log(gamma_sample(j, r)) + std::log(gamma_sample(j, r)));
        return acc;
    });
    const auto a = SampleStats::of(lhs);
    const auto b = SampleStats::of(rhs);
    CHECK(std::abs(a.mean - b.mean) <= 3.0 * std::hypot(a.std_error, b.std_error));
    // and the lhs log-mean matches sum psi(j)
    CHECK(within_3se(a, sum_digamma(n)));
}

TEST_CASE("Q law: density, Mellin transform and sampler")
{
    const auto total = integrate_semi_infinite(q_density, QuadratureSpec{});
    CHECK(std::abs(total.value - 1.0) <= 1e-10);
    CHECK(q_mellin(0.0) == Approx(1.0).epsilon(1e-14));
    CHECK(q_mellin(1.0) == Approx(18.0 * zeta(3.0) / (std::numbers::pi * std::numbers::pi)).epsilon(1e-14));
    CHECK_THROWS_AS(q_mellin(-1.0), DomainError);
    // Mellin transform against quadrature of the density
    for (double s : {-0.5, 0.5, 2.0}) {
        CAPTURE(s);
        const auto q = integrate_semi_infinite([s](double u) { return std::pow(u, s) * q_density(u); },
                                               QuadratureSpec{});
        CHECK(q.value == Approx(q_mellin(s)).epsilon(1e-10));
    }
    CHECK(q_cdf(0.0) == 0.0);
    CHECK(q_cdf(1e3) == Approx(1.0).epsilon(1e-12));

    RngStream rng(7, 0);
    auto q = draws(100000, rng, sample_q);
    CHECK(empirical_mellin(q, 0.0).mean == 1.0);
    for (double s : {-0.5, 0.5, 1.0, 2.0}) {
        CAPTURE(s);
        CHECK(within_3se(empirical_mellin(q, s), q_mellin(s)));
    }
    std::sort(q.begin(), q.end());
    const auto cdf = q_cdf_sorted(q);
    CHECK(cdf[q.size() / 2] == Approx(q_cdf(q[q.size() / 2])).epsilon(1e-11));
    const auto ks = ks_one_sample_presorted(cdf);
    CAPTURE(ks.statistic);
    CHECK(ks.pass);
}

TEST_CASE("KS helpers")
{
    CHECK(ks_coefficient(0.01) == Approx(1.6276).epsilon(1e-4));
    CHECK_THROWS_AS(ks_coefficient(0.0), ParameterError);
    const auto same = ks_two_sample({1, 2, 3}, {1, 2, 3});
    CHECK(same.statistic == 0.0);
    std::vector<double> lo(50), hi(50);
    for (int i = 0; i < 50; ++i) {
        lo[i] = i;
        hi[i] = 100 + i;
    }
    const auto apart = ks_two_sample(lo, hi);
    CHECK(apart.statistic == 1.0);
    CHECK_FALSE(apart.pass);
    // uniform draws against the uniform CDF
    RngStream rng(8, 0);
    const auto u = draws(50000, rng, [](RngStream& r) { return r.uniform(); });
    CHECK(ks_one_sample(u, [](double x) { return x; }).pass);
    // and against a wrong CDF
    CHECK_FALSE(ks_one_sample(u, [](double x) { return x * x; }).pass);
}
