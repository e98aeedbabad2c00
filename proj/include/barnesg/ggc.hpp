#pragma once

// Generalized gamma convolutions described by their Thorin measure, the
// limit functional H(lambda) for centered sums of scaled GGC block averages,
// and the supporting integrals.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "barnesg/cue_moments.hpp"
#include "barnesg/num_core.hpp"
#include "barnesg/samplers.hpp"

namespace barnesg {

struct ThorinAtom {
    double mass = 0.0;      ///< w > 0
    double location = 0.0;  ///< xi > 0
};

struct ThorinDensityPoint {
    double location = 0.0;  ///< xi > 0, strictly increasing along the grid
    double density = 0.0;   ///< >= 0
};

/// mu(dxi) = sum_i w_i delta_{xi_i} + (trapezoid-integrated density grid).
struct ThorinMeasure {
    std::vector<ThorinAtom> atoms;
    std::vector<ThorinDensityPoint> density_grid;

    static ThorinMeasure delta(double mass = 1.0, double location = 1.0);

    /// Throws ParameterError on non-positive masses/locations, negative
    /// densities, or an unsorted grid.
    void validate() const;
    bool has_grid() const { return !density_grid.empty(); }
    /// Atoms only: the grid replaced by its trapezoid weights.
    ThorinMeasure discretized() const;
};

struct ThorinMoments {
    double mu_m1 = 0.0;  ///< int mu(dxi)/xi = E[Y]
    double mu_m2 = 0.0;  ///< int mu(dxi)/xi^2 = Var[Y] = sigma^2
};

enum class HConstantMode {
    paper_one_plus_gamma,  ///< c = 1 + euler_gamma
    corrected_gamma        ///< c = euler_gamma
};

std::string_view to_string(HConstantMode mode);
std::optional<HConstantMode> parse_h_mode(std::string_view text);

struct SnQuery {
    ThorinMeasure measure;
    long n_max = 1;
    double lambda = 0.0;
};

ThorinMoments thorin_moments(const ThorinMeasure& mu);

/// Sigma_mu(y) = int mu(dxi) / (2 sinh(xi y / 2))^2, y > 0.
double sigma_mu(const ThorinMeasure& mu, double y);

/// log H(lambda) = c lambda^2 sigma^2 / 2
///   + int_0^inf (dy/y) Sigma_mu(y) (e^{-lambda y} - 1 + lambda y - lambda^2 y^2 / 2).
double log_h_lambda(const ThorinMeasure& mu, double lambda, HConstantMode mode,
                    const QuadratureSpec& spec = {});
double h_lambda(const ThorinMeasure& mu, double lambda, HConstantMode mode,
                const QuadratureSpec& spec = {});

/// E[exp(-lambda Y)] = exp(-int mu(dxi) log(1 + lambda/xi)), lambda >= 0.
double laplace_y(const ThorinMeasure& mu, double lambda);

/// N^{-lambda^2 sigma^2/2} prod_{n<=N} (e^{lambda mu_{-1}/n} E[e^{-lambda Y/n}])^n, in log form.
double log_scaled_laplace_sn(const SnQuery& q);
double scaled_laplace_sn(const SnQuery& q);

/// N^{-lambda^2/2} e^{lambda N} prod_{n<=N} (1 + lambda/n)^{-n}, in log form.
double log_thm12_lhs(long n, double lambda);
/// (A^lambda e^{lambda^2/2} G(1 + lambda))^{-1}, in log form.
double log_thm12_limit(double lambda);

/// int_0^inf (dy/y) (1 - lambda y - e^{-lambda y}) N e^{-xi y N} / (e^{xi y} - 1).
double rn_probe(double xi, double lambda, long n, const QuadratureSpec& spec = {});

/// int_0^inf u e^{-u} (1 - e^{-N u}) / (1 - e^{-u})^2 du by quadrature.
double bonlem_integral(long n, const QuadratureSpec& spec = {});
/// N (zeta(2) - sum_{s<=N} s^{-2}) + H_N.
double bonlem_closed_form(long n);

/// [log Gamma(a + lambda) - log Gamma(a)]
///   - [lambda psi(a) + int_0^inf e^{-a u} (e^{-lambda u} - 1 + lambda u) / (u (1 - e^{-u})) du].
IdentityReport lemma_loggamma_residual(double a, double lambda, double tolerance = 1e-8,
                                       const QuadratureSpec& spec = {});

/// Y = sum_i gamma(w_i) / xi_i. Atom-only measures.
double sample_y(const ThorinMeasure& mu, RngStream& rng);
/// S_N = sum_{n<=N} (Y_n - mu_{-1}), Y_n = sum_i gamma(n w_i) / (n xi_i).
double sample_sn(const SnQuery& q, RngStream& rng);

/// Nonnegative step function: values[k] holds on [breakpoints[k], breakpoints[k+1]).
struct StepFunction {
    std::vector<double> breakpoints;
    std::vector<double> values;
};

/// Thorin measure of int_0^inf f(u) d gamma_u: each step (length l, value v > 0)
/// becomes the atom (l, 1/v).
ThorinMeasure ggc_from_function(const StepFunction& f);

//---------------------------------------------------------------------------//
// Which constant in H(lambda) matches the exact finite-N transform
//---------------------------------------------------------------------------//

struct AdjudicationCase {
    std::string label;
    double lambda = 0.0;
    double sigma2 = 0.0;
    double log_h_paper = 0.0;
    double log_h_corrected = 0.0;
    double log_s_coarse = 0.0;  ///< at n_coarse
    double log_s_fine = 0.0;    ///< at n_fine
    double extrapolation_err = 0.0;  ///< |log_s_fine - log_s_coarse|
    double log_h_rn_implied = 0.0;   ///< log_h_paper + sum_i w_i (recorded R_N limit at xi_i)
    bool paper_match = false;
    bool corrected_match = false;
};

struct RnEvidence {
    double xi = 0.0;
    double lambda = 0.0;
    std::vector<long> n_values;
    std::vector<double> values;
    double recorded_limit = 0.0;  ///< Richardson extrapolation of the last two values
    double corrected_target = 0.0;  ///< -lambda^2 / (2 xi^2)
    bool cauchy = false;          ///< successive gaps shrink by at least 2x
    bool near_zero = false;
    bool near_corrected = false;
};

struct AdjudicationReport {
    long n_coarse = 1000;
    long n_fine = 10000;
    double match_factor = 10.0;
    std::vector<AdjudicationCase> cases;
    std::vector<RnEvidence> rn;
    std::optional<HConstantMode> winner;
    bool rn_consistent = false;
    bool pass = false;  ///< unique winner, identical across cases, rn consistent
};

struct AdjudicationInput {
    std::string label;
    ThorinMeasure measure;
};

/// Default cases: delta_1 and the two-atom measure {(1, 1), (2, 2)}.
std::vector<AdjudicationInput> default_adjudication_measures();

AdjudicationReport adjudicate_h_constant(const std::vector<AdjudicationInput>& measures,
                                         const std::vector<double>& lambdas,
                                         long n_coarse = 1000, long n_fine = 10000);

}  // namespace barnesg
