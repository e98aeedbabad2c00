#include "barnesg/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace barnesg {
namespace {

constexpr long kQTableSize = 1000000;

// P(n) = 6 / (pi^2 n^2): cumulative table up to kQTableSize; beyond it the
// conditional law P(n > k | n > M) ~ M / k is sampled directly.
const std::vector<double>& inverse_square_cdf()
{
    static const std::vector<double> table = [] {
        std::vector<double> cdf(kQTableSize);
        const double norm = 6.0 / (std::numbers::pi * std::numbers::pi);
        CompensatedSum<double> acc;
        for (long n = 1; n <= kQTableSize; ++n) {
            const double nd = static_cast<double>(n);
            acc.add(norm / (nd * nd));
            cdf[static_cast<std::size_t>(n - 1)] = acc.value();
        }
        return cdf;
    }();
    return table;
}

long sample_inverse_square(RngStream& rng)
{
    const auto& cdf = inverse_square_cdf();
    const double u = rng.uniform();
    if (u >= cdf.back())
        return static_cast<long>(std::floor(static_cast<double>(kQTableSize) / rng.uniform())) + 1;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<long>(it - cdf.begin()) + 1;
}

void require_draws(std::span<const double> draws, const char* what)
{
    if (draws.empty())
        throw ParameterError(std::string(what) + ": empty sample");
}

KsResult finish_ks(double d, double threshold, long n, long m)
{
    KsResult r;
    r.statistic = d;
    r.threshold = threshold;
    r.n = n;
    r.m = m;
    r.pass = d <= threshold;
    return r;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    engine_.seed(seq);
}

double RngStream::uniform()
{
    // 53 random bits, offset by half a step so 0 and 1 are both excluded
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal()
{
    return normal_(engine_);
}

SampleStats SampleStats::of(std::span<const double> values)
{
    require_draws(values, "SampleStats");
    // Welford
    double mean = 0.0;
    double m2 = 0.0;
    long n = 0;
    for (double v : values) {
        ++n;
        const double delta = v - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (v - mean);
    }
    SampleStats s;
    s.n = n;
    s.mean = mean;
    s.variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    s.std_error = std::sqrt(s.variance / static_cast<double>(n));
    require_finite(s.mean, "SampleStats mean");
    require_finite(s.variance, "SampleStats variance");
    return s;
}

double gamma_sample(double a, RngStream& rng)
{
    if (!(a > 0) || !std::isfinite(a))
        throw ParameterError("gamma_sample: shape must be positive and finite");
    std::gamma_distribution<double> dist(a, 1.0);
    double x = 0.0;
    do
        x = dist(rng.engine());
    while (!(x > 0));
    return x;
}

double beta_sample(double a, double b, RngStream& rng)
{
    if (!(a > 0) || !(b > 0))
        throw ParameterError("beta_sample: parameters must be positive");
    const double x = gamma_sample(a, rng);
    const double y = gamma_sample(b, rng);
    return x / (x + y);
}

double log_beta_sample(double a, double b, RngStream& rng)
{
    if (!(a > 0) || !(b > 0))
        throw ParameterError("log_beta_sample: parameters must be positive");
    const double x = gamma_sample(a, rng);
    const double y = gamma_sample(b, rng);
    return std::log(x) - std::log(x + y);
}

double log_abs_z_beta_sample(int n, RngStream& rng)
{
    if (n < 1)
        throw ParameterError("sample_abs_z_beta: N must be >= 1");
    double acc = n * std::numbers::ln2;
    for (int j = 1; j <= n; ++j)
        acc += 0.5 * log_beta_sample(0.5 * j, 0.5 * j, rng);
    for (int j = 2; j <= n; ++j)
        acc += 0.5 * log_beta_sample(0.5 * (j + 1), 0.5 * (j - 1), rng);
    return acc;
}

double sample_abs_z_beta(int n, RngStream& rng)
{
    return std::exp(log_abs_z_beta_sample(n, rng));
}

double sample_haar_abs_det(int n, RngStream& rng)
{
    if (n < 1 || n > kMaxHaarDim)
        throw ParameterError("sample_haar_abs_det: N must be in [1, " + std::to_string(kMaxHaarDim) + "]");
    const auto un = static_cast<std::size_t>(n);
    // columns of a complex Ginibre matrix
    std::vector<ComplexScalar> q(un * un);
    const double scale = std::sqrt(0.5);
    for (auto& v : q)
        v = ComplexScalar(rng.normal(), rng.normal()) * scale;

    auto col = [&](std::size_t j) { return q.data() + j * un; };
    // modified Gram-Schmidt with one reorthogonalization pass. R then has a
    // positive real diagonal, which makes Q exactly Haar distributed.
    for (std::size_t j = 0; j < un; ++j) {
        ComplexScalar* cj = col(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                const ComplexScalar* ck = col(k);
                ComplexScalar dot{};
                for (std::size_t i = 0; i < un; ++i)
                    dot += std::conj(ck[i]) * cj[i];
                for (std::size_t i = 0; i < un; ++i)
                    cj[i] -= dot * ck[i];
            }
        }
        double norm2 = 0.0;
        for (std::size_t i = 0; i < un; ++i)
            norm2 += std::norm(cj[i]);
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < un; ++i)
            cj[i] *= inv;
    }

    // A = I - U, row-major copy for LU
    std::vector<ComplexScalar> a(un * un);
    for (std::size_t i = 0; i < un; ++i)
        for (std::size_t j = 0; j < un; ++j)
            a[i * un + j] = (i == j ? 1.0 : 0.0) - col(j)[i];

    double log_abs = 0.0;
    for (std::size_t k = 0; k < un; ++k) {
        std::size_t piv = k;
        double best = std::abs(a[k * un + k]);
        for (std::size_t i = k + 1; i < un; ++i) {
            const double v = std::abs(a[i * un + k]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0)
            return 0.0;
        if (piv != k)
            for (std::size_t j = k; j < un; ++j)
                std::swap(a[k * un + j], a[piv * un + j]);
        const ComplexScalar p = a[k * un + k];
        log_abs += std::log(best);
        for (std::size_t i = k + 1; i < un; ++i) {
            const ComplexScalar f = a[i * un + k] / p;
            if (f == ComplexScalar{})
                continue;
            for (std::size_t j = k + 1; j < un; ++j)
                a[i * un + j] -= f * a[k * un + j];
        }
    }
    return std::exp(log_abs);
}

double sample_q(RngStream& rng)
{
    // E f(Q) = (6/pi^2) sum_n n^{-2} E f(g_3 / n)
    const long n = sample_inverse_square(rng);
    return gamma_sample(3.0, rng) / static_cast<double>(n);
}

double q_density(double u)
{
    const double h = 0.5 * std::abs(u);
    double r = 1.0;
    if (h > 1e-8)
        r = h < 700.0 ? h / std::sinh(h) : 0.0;
    return 3.0 / (std::numbers::pi * std::numbers::pi) * r * r;
}

double q_mellin(double s)
{
    if (!(s > -1.0))
        throw DomainError("q_mellin: requires s > -1");
    return std::exp(std::log(3.0 / (std::numbers::pi * std::numbers::pi)) + log_gamma(s + 3.0))
           * zeta(s + 2.0);
}

double q_cdf(double u)
{
    if (!(u > 0))
        return 0.0;
    if (!std::isfinite(u))
        return 1.0;
    return std::min(1.0, integrate_interval(q_density, 0.0, u, QuadratureSpec{}).value);
}

std::vector<double> q_cdf_sorted(std::span<const double> ascending)
{
    std::vector<double> out;
    out.reserve(ascending.size());
    CompensatedSum<double> acc;
    double prev = 0.0;
    for (double x : ascending) {
        if (x < prev)
            throw ParameterError("q_cdf_sorted: points must be ascending");
        if (x > prev && prev >= 0.0)
            acc.add(integrate_interval(q_density, prev, x, QuadratureSpec{}).value);
        if (x > 0)
            prev = x;
        out.push_back(std::clamp(acc.value(), 0.0, 1.0));
    }
    return out;
}

SampleStats empirical_mellin(std::span<const double> draws, double s)
{
    require_draws(draws, "empirical_mellin");
    std::vector<double> t(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i) {
        if (s == 0.0) {
            t[i] = 1.0;
            continue;
        }
        if (!(draws[i] > 0))
            throw DomainError("empirical_mellin: draws must be positive");
        t[i] = std::pow(draws[i], s);
    }
    return SampleStats::of(t);
}

SampleStats empirical_laplace(std::span<const double> draws, double lambda)
{
    require_draws(draws, "empirical_laplace");
    std::vector<double> t(draws.size());
    for (std::size_t i = 0; i < draws.size(); ++i)
        t[i] = lambda == 0.0 ? 1.0 : std::exp(-lambda * draws[i]);
    return SampleStats::of(t);
}

double ks_coefficient(double alpha)
{
    if (!(alpha > 0 && alpha < 1))
        throw ParameterError("ks_coefficient: alpha must lie in (0, 1)");
    return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

KsResult ks_one_sample_presorted(std::span<const double> cdf_at_sorted, double alpha)
{
    require_draws(cdf_at_sorted, "ks_one_sample");
    const double n = static_cast<double>(cdf_at_sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < cdf_at_sorted.size(); ++i) {
        const double f = cdf_at_sorted[i];
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return finish_ks(d, ks_coefficient(alpha) / std::sqrt(n), static_cast<long>(n), 0);
}

KsResult ks_one_sample(std::vector<double> draws, const std::function<double(double)>& cdf,
                       double alpha)
{
    require_draws(draws, "ks_one_sample");
    std::sort(draws.begin(), draws.end());
    for (auto& x : draws)
        x = cdf(x);
    return ks_one_sample_presorted(draws, alpha);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha)
{
    require_draws(a, "ks_two_sample");
    require_draws(b, "ks_two_sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x)
            ++i;
        while (j < b.size() && b[j] == x)
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    const double threshold = ks_coefficient(alpha) * std::sqrt((na + nb) / (na * nb));
    return finish_ks(d, threshold, static_cast<long>(a.size()), static_cast<long>(b.size()));
}

}  // namespace barnesg
