#pragma once

// Seeded random variates (gamma, beta, Q, |det(I - U)| for Haar U) and
// Monte Carlo estimators with standard errors.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "barnesg/num_core.hpp"

namespace barnesg {

/// One reproducible random stream. The same (seed, stream_id) pair yields the
/// same draws on a given build. Not safe to share between threads.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Uniform on the open interval (0, 1).
    double uniform();
    double normal();

    std::mt19937_64& engine() { return engine_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

struct SampleStats {
    long n = 0;
    double mean = 0.0;
    double variance = 0.0;   ///< unbiased; 0 when n == 1
    double std_error = 0.0;  ///< sqrt(variance / n)

    static SampleStats of(std::span<const double> values);
};

/// Gamma(a, 1) draw. Marsaglia-Tsang rejection with the U^{1/a} boost for a < 1.
double gamma_sample(double a, RngStream& rng);

/// Beta(a, b) draw as g_a / (g_a + g_b).
double beta_sample(double a, double b, RngStream& rng);
/// log of a Beta(a, b) draw, without forming the ratio.
double log_beta_sample(double a, double b, RngStream& rng);

/// log of 2^N prod_j sqrt(beta_{j/2, j/2}) prod_{j>=2} sqrt(beta_{(j+1)/2, (j-1)/2}).
double log_abs_z_beta_sample(int n, RngStream& rng);
double sample_abs_z_beta(int n, RngStream& rng);

constexpr int kMaxHaarDim = 64;

/// |det(I - U)| with U Haar on U(N), N <= kMaxHaarDim.
double sample_haar_abs_det(int n, RngStream& rng);

/// Draw from the density (3/pi^2) ((u/2)/sinh(u/2))^2 on (0, inf).
double sample_q(RngStream& rng);
double q_density(double u);
/// E[Q^s] = (3/pi^2) Gamma(s + 3) zeta(s + 2), s > -1.
double q_mellin(double s);
/// CDF of Q by quadrature.
double q_cdf(double u);
/// CDF of Q at ascending points, integrating piecewise between neighbours.
std::vector<double> q_cdf_sorted(std::span<const double> ascending);

/// Stats of x^s over the draws. Draws must be positive unless s == 0.
SampleStats empirical_mellin(std::span<const double> draws, double s);
/// Stats of exp(-lambda x) over the draws.
SampleStats empirical_laplace(std::span<const double> draws, double lambda);

struct KsResult {
    double statistic = 0.0;
    double threshold = 0.0;
    long n = 0;
    long m = 0;  ///< second sample size; 0 for one-sample tests
    bool pass = false;
};

/// Asymptotic Kolmogorov critical coefficient sqrt(-ln(alpha/2) / 2).
double ks_coefficient(double alpha);

KsResult ks_one_sample(std::vector<double> draws, const std::function<double(double)>& cdf,
                       double alpha = 0.01);
/// One-sample test when the CDF is already evaluated at the sorted draws.
KsResult ks_one_sample_presorted(std::span<const double> cdf_at_sorted, double alpha = 0.01);
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha = 0.01);

}  // namespace barnesg
