#include "barnesg/cli/commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <tuple>

#include "CLI11.hpp"

#include "barnesg/barnes.hpp"
#include "barnesg/cue_moments.hpp"
#include "barnesg/ggc.hpp"
#include "barnesg/samplers.hpp"

#ifndef BARNESG_BUILD_ID
#define BARNESG_BUILD_ID "barnesg-dev"
#endif

namespace barnesg::cli {
namespace {

const double kNaN = std::nan("");

std::string trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

double to_double(std::string_view s)
{
    const std::string t = trim(s);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size() || !std::isfinite(v))
        throw ConfigError("not a finite number: '" + t + "'");
    return v;
}

long to_long(std::string_view s)
{
    const double v = to_double(s);
    if (v != std::floor(v) || std::abs(v) > 1e15)
        throw ConfigError("not an integer: '" + std::string(s) + "'");
    return static_cast<long>(v);
}

class Params {
  public:
    Params(const CommandSpec& spec, const RunConfig& cfg)
    {
        for (const auto& o : spec.options)
            values_[o.name] = o.default_value;
        for (const auto& [k, v] : cfg.params) {
            if (!values_.count(k))
                throw ConfigError("unknown parameter '" + k + "' for '" + cfg.command + "'");
            values_[k] = v;
        }
    }
    const std::string& str(const std::string& k) const { return values_.at(k); }
    double real(const std::string& k) const { return to_double(str(k)); }
    long integer(const std::string& k) const { return to_long(str(k)); }
    std::vector<double> reals(const std::string& k) const { return parse_real_grid(str(k)); }
    std::vector<long> ints(const std::string& k) const { return parse_int_grid(str(k)); }

  private:
    std::map<std::string, std::string> values_;
};

// Fill one row; on an exception the value cells become NaN, pass is false and
// the message lands in the error column. Columns end with pass, error.
void guarded_row(ResultTable& t, std::vector<Cell> prefix,
                 const std::function<std::pair<std::vector<Cell>, bool>()>& body)
{
    const std::size_t width = t.columns().size() - prefix.size() - 2;
    std::vector<Cell> row = std::move(prefix);
    std::vector<Cell> vals;
    bool pass = false;
    std::string error;
    try {
        std::tie(vals, pass) = body();
    } catch (const std::exception& e) {
        vals.assign(width, Cell{kNaN});
        pass = false;
        error = e.what();
    }
    row.insert(row.end(), vals.begin(), vals.end());
    row.emplace_back(pass);
    row.emplace_back(error);
    t.add_row(std::move(row));
}

std::vector<std::string> with_status(std::vector<std::string> cols)
{
    cols.emplace_back("pass");
    cols.emplace_back("error");
    return cols;
}

int require_dim(long n)
{
    if (n < 1 || n > 100000000)
        throw ConfigError("matrix size out of range: " + std::to_string(n));
    return static_cast<int>(n);
}

//---------------------------------------------------------------------------//
// barnes
//---------------------------------------------------------------------------//

ResultTable cmd_barnes_eval(const Params& p, const RunConfig&)
{
    const auto zs = parse_complex_grid(p.str("z"));
    const double tol = p.real("tol");
    ResultTable t;
    t.set_columns(with_status({"z_re", "z_im", "product_re", "product_im", "product_err", "series_re",
                               "series_im", "series_err", "integral_re", "integral_im", "integral_err",
                               "dispatch_re", "dispatch_im", "dispatch_route", "max_excess",
                               "tolerance"}));
    for (const auto& z : zs) {
        guarded_row(t, {z.real(), z.imag()}, [&] {
            struct Val { bool ok = false; ComplexScalar v; double e = 0; };
            Val r[3];
            if (z.real() > -1.0) {
                const auto a = log_barnes_g_product(z);
                r[0] = {true, a.log_value, a.err_estimate};
                const auto c = log_barnes_g_integral(z);
                r[2] = {true, c.log_value, c.err_estimate};
            }
            if (std::abs(z) < 1.0) {
                const auto b = log_barnes_g_series(z);
                r[1] = {true, b.log_value, b.err_estimate};
            }
            const auto d = log_barnes_g(z);
            double excess = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (r[i].ok && r[j].ok)
                        excess = std::max(excess, std::abs(r[i].v - r[j].v) - r[i].e - r[j].e);
            std::vector<Cell> vals;
            for (const auto& v : r) {
                vals.emplace_back(v.ok ? v.v.real() : kNaN);
                vals.emplace_back(v.ok ? v.v.imag() : kNaN);
                vals.emplace_back(v.ok ? v.e : kNaN);
            }
            vals.emplace_back(d.log_value.real());
            vals.emplace_back(d.log_value.imag());
            vals.emplace_back(std::string(to_string(d.route)));
            vals.emplace_back(excess);
            vals.emplace_back(tol);
            return std::make_pair(vals, excess <= tol);
        });
    }
    return t;
}

ResultTable cmd_barnes_table(const Params& p, const RunConfig&)
{
    const auto zs = parse_complex_grid(p.str("z"));
    ResultTable t;
    t.set_columns(with_status({"z_re", "z_im", "log_g_re", "log_g_im", "g_re", "g_im", "route",
                               "err_estimate"}));
    for (const auto& z : zs) {
        guarded_row(t, {z.real(), z.imag()}, [&] {
            const auto r = log_barnes_g(z);
            const ComplexScalar g = std::exp(r.log_value);
            std::vector<Cell> vals{r.log_value.real(), r.log_value.imag(), g.real(), g.imag(),
                                   std::string(to_string(r.route)), r.err_estimate};
            return std::make_pair(vals, true);
        });
    }
    return t;
}

//---------------------------------------------------------------------------//
// cue
//---------------------------------------------------------------------------//

ResultTable cmd_cue_moments(const Params& p, const RunConfig&)
{
    const auto ns = p.ints("n");
    const auto lams = parse_complex_grid(p.str("lambda"));
    const std::string sc = p.str("scaling");
    MomentScaling scaling;
    if (sc == "none")
        scaling = MomentScaling::none;
    else if (sc == "lambda_sq")
        scaling = MomentScaling::n_to_lambda_sq;
    else if (sc == "half_lambda_sq")
        scaling = MomentScaling::n_to_half_lambda_sq;
    else
        throw ConfigError("--scaling must be none, lambda_sq or half_lambda_sq");
    ResultTable t;
    t.set_columns(with_status({"n", "lambda_re", "lambda_im", "log_moment_re", "log_moment_im"}));
    for (long n : ns) {
        for (const auto& l : lams) {
            guarded_row(t, {static_cast<double>(n), l.real(), l.imag()}, [&] {
                const auto v = log_moment(MomentQuery{require_dim(n), l, scaling});
                return std::make_pair(std::vector<Cell>{v.real(), v.imag()}, true);
            });
        }
    }
    return t;
}

ResultTable cmd_cue_limit(const Params& p, const RunConfig&)
{
    const auto lams = p.reals("lambda");
    const auto ns = p.ints("n");
    const std::string kind = p.str("kind");
    if (kind != "moments" && kind != "thm14")
        throw ConfigError("--kind must be moments or thm14");
    ResultTable t;
    t.set_columns(with_status({"lambda", "n", "value", "gap", "decreasing"}));
    for (double lam : lams) {
        double prev = INFINITY;
        for (long n : ns) {
            guarded_row(t, {lam, static_cast<double>(n)}, [&] {
                double v;
                if (kind == "moments") {
                    v = scaled_moment_ratio(require_dim(n), lam);
                } else {
                    const double log_lim = lam * std::log(constant_a()) + log_barnes_g(lam).log_value.real();
                    v = std::exp(log_thm14_lhs(require_dim(n), lam) + log_lim);
                }
                const double gap = std::abs(v - 1.0);
                const bool dec = gap < prev;
                prev = gap;
                return std::make_pair(std::vector<Cell>{v, gap, dec}, dec);
            });
        }
    }
    return t;
}

//---------------------------------------------------------------------------//
// verify
//---------------------------------------------------------------------------//

ResultTable identity_table(const Params& p, IdentityReport (*fn)(int, double, double))
{
    const auto ns = p.ints("n");
    const auto ts = p.reals("t");
    const double tol = p.real("tol");
    ResultTable t;
    t.set_columns(with_status({"n", "t", "lhs_log", "rhs_log", "residual", "tolerance"}));
    for (long n : ns) {
        for (double tt : ts) {
            guarded_row(t, {static_cast<double>(n), tt}, [&] {
                const auto r = fn(require_dim(n), tt, tol);
                return std::make_pair(std::vector<Cell>{r.lhs_log, r.rhs_log, r.residual, r.tolerance}, r.pass);
            });
        }
    }
    return t;
}

ResultTable cmd_verify_ks(const Params& p, const RunConfig&)
{
    return identity_table(p, &ks_gamma_identity_residual);
}

ResultTable cmd_verify_beta(const Params& p, const RunConfig&)
{
    return identity_table(p, &beta_identity_residual);
}

// check rows: pass iff |value - target| <= tolerance
void check_row(ResultTable& t, const std::string& name, const std::function<std::array<double, 3>()>& f)
{
    guarded_row(t, {name}, [&] {
        const auto [value, target, tol] = f();
        return std::make_pair(std::vector<Cell>{value, target, tol}, std::abs(value - target) <= tol);
    });
}

long require_samples(long m)
{
    if (m < 2)
        throw ConfigError("--samples must be at least 2");
    return m;
}

ResultTable cmd_verify_haar(const Params& p, const RunConfig& cfg)
{
    const int n = require_dim(p.integer("n"));
    if (n > kMaxHaarDim)
        throw ConfigError("--n must be at most " + std::to_string(kMaxHaarDim));
    const long m = require_samples(p.integer("samples"));
    const double alpha = p.real("alpha");
    ResultTable t;
    t.set_columns(with_status({"check", "value", "target", "tolerance"}));

    RngStream haar_rng(cfg.seed, 0);
    RngStream beta_rng(cfg.seed, 1);
    std::vector<double> haar(static_cast<std::size_t>(m)), beta(static_cast<std::size_t>(m));
    for (auto& x : haar)
        x = sample_haar_abs_det(n, haar_rng);
    for (auto& x : beta)
        x = sample_abs_z_beta(n, beta_rng);

    check_row(t, "haar_second_moment", [&] {
        const auto s = empirical_mellin(haar, 2.0);
        return std::array<double, 3>{s.mean, n + 1.0, 3.0 * s.std_error};
    });
    check_row(t, "haar_first_moment", [&] {
        const auto s = empirical_mellin(haar, 1.0);
        return std::array<double, 3>{s.mean, std::exp(log_moment_abs_t(n, 1.0).real()), 3.0 * s.std_error};
    });
    check_row(t, "beta_second_moment", [&] {
        const auto s = empirical_mellin(beta, 2.0);
        return std::array<double, 3>{s.mean, n + 1.0, 3.0 * s.std_error};
    });
    check_row(t, "ks_log_beta_vs_log_haar", [&] {
        std::vector<double> la(haar.size()), lb(beta.size());
        std::transform(haar.begin(), haar.end(), la.begin(), [](double x) { return std::log(x); });
        std::transform(beta.begin(), beta.end(), lb.begin(), [](double x) { return std::log(x); });
        const auto ks = ks_two_sample(lb, la, alpha);
        return std::array<double, 3>{ks.statistic, 0.0, ks.threshold};
    });
    return t;
}

ResultTable cmd_verify_q(const Params& p, const RunConfig& cfg)
{
    const long m = require_samples(p.integer("samples"));
    const auto ss = p.reals("s");
    const double alpha = p.real("alpha");
    ResultTable t;
    t.set_columns(with_status({"check", "value", "target", "tolerance"}));
    check_row(t, "density_mass", [&] {
        const double mass = integrate_semi_infinite(q_density, QuadratureSpec{}).value;
        return std::array<double, 3>{mass, 1.0, 1e-10};
    });
    RngStream rng(cfg.seed, 0);
    std::vector<double> q(static_cast<std::size_t>(m));
    for (auto& x : q)
        x = sample_q(rng);
    for (double s : ss) {
        check_row(t, "mellin_s=" + format_double(s), [&] {
            const auto st = empirical_mellin(q, s);
            return std::array<double, 3>{st.mean, q_mellin(s), 3.0 * st.std_error};
        });
    }
    check_row(t, "ks_quadrature_cdf", [&] {
        std::vector<double> sorted = q;
        std::sort(sorted.begin(), sorted.end());
        const auto ks = ks_one_sample_presorted(q_cdf_sorted(sorted), alpha);
        return std::array<double, 3>{ks.statistic, 0.0, ks.threshold};
    });
    return t;
}

//---------------------------------------------------------------------------//
// ggc
//---------------------------------------------------------------------------//

ResultTable cmd_ggc_h(const Params& p, const RunConfig&)
{
    const auto mu = parse_measure(p.str("measure"));
    const auto lams = p.reals("lambda");
    const std::string m = p.str("mode");
    std::vector<HConstantMode> modes;
    if (m == "both") {
        modes = {HConstantMode::paper_one_plus_gamma, HConstantMode::corrected_gamma};
    } else if (auto pm = parse_h_mode(m)) {
        modes = {*pm};
    } else {
        throw ConfigError("--mode must be paper, corrected or both");
    }
    ResultTable t;
    t.set_columns(with_status({"lambda", "mode", "log_h", "h"}));
    for (double lam : lams) {
        for (auto mode : modes) {
            guarded_row(t, {lam, std::string(to_string(mode))}, [&] {
                const double v = log_h_lambda(mu, lam, mode);
                return std::make_pair(std::vector<Cell>{v, std::exp(v)}, true);
            });
        }
    }
    return t;
}

ResultTable cmd_ggc_limit(const Params& p, const RunConfig&)
{
    const auto mu = parse_measure(p.str("measure"));
    const auto lams = p.reals("lambda");
    const auto ns = p.ints("n");
    ResultTable t;
    t.set_columns(with_status({"lambda", "n", "log_s", "log_h_corrected", "log_h_paper", "remainder",
                               "decreasing"}));
    for (double lam : lams) {
        double prev = INFINITY;
        double hc = kNaN;
        double hp = kNaN;
        for (long n : ns) {
            guarded_row(t, {lam, static_cast<double>(n)}, [&] {
                if (std::isnan(hc)) {
                    hc = log_h_lambda(mu, lam, HConstantMode::corrected_gamma);
                    hp = log_h_lambda(mu, lam, HConstantMode::paper_one_plus_gamma);
                }
                const double ls = log_scaled_laplace_sn({mu, n, lam});
                const double rem = std::abs(std::expm1(ls - hc));
                const bool dec = rem < prev;
                prev = rem;
                return std::make_pair(std::vector<Cell>{ls, hc, hp, rem, dec}, dec);
            });
        }
    }
    return t;
}

ResultTable cmd_ggc_adjudicate(const Params& p, const RunConfig&)
{
    std::vector<AdjudicationInput> measures;
    const std::string ms = p.str("measure");
    if (ms == "default")
        measures = default_adjudication_measures();
    else
        measures.push_back({ms, parse_measure(ms)});
    const auto rep = adjudicate_h_constant(measures, p.reals("lambda"), p.integer("n-coarse"),
                                           p.integer("n-fine"));
    ResultTable t;
    t.set_meta("winner", rep.winner ? std::string(to_string(*rep.winner)) : "none");
    t.set_meta("rn_consistent", rep.rn_consistent ? "true" : "false");
    t.set_meta("match_factor", format_double(rep.match_factor));
    for (const auto& ev : rep.rn) {
        std::string v;
        for (std::size_t i = 0; i < ev.values.size(); ++i)
            v += "R(" + std::to_string(ev.n_values[i]) + ")=" + format_double(ev.values[i]) + ";";
        v += "limit=" + format_double(ev.recorded_limit) + ";target=" + format_double(ev.corrected_target);
        t.set_meta("rn[xi=" + format_double(ev.xi) + ",lambda=" + format_double(ev.lambda) + "]", v);
    }
    t.set_columns(with_status({"measure", "lambda", "log_h_paper", "log_h_corrected", "log_s_coarse",
                               "log_s_fine", "extrapolation_err", "log_h_rn_implied", "paper_match",
                               "corrected_match"}));
    for (const auto& c : rep.cases) {
        const bool winner_matches =
            rep.winner && (*rep.winner == HConstantMode::corrected_gamma ? c.corrected_match : c.paper_match);
        t.add_row({c.label, c.lambda, c.log_h_paper, c.log_h_corrected, c.log_s_coarse, c.log_s_fine,
                   c.extrapolation_err, c.log_h_rn_implied, c.paper_match, c.corrected_match,
                   rep.pass && winner_matches, std::string()});
    }
    return t;
}

ResultTable cmd_ggc_rn_probe(const Params& p, const RunConfig&)
{
    const double xi = p.real("xi");
    const auto lams = p.reals("lambda");
    const auto ns = p.ints("n");
    ResultTable t;
    t.set_columns(with_status({"xi", "lambda", "n", "value", "corrected_target", "gap", "gap_ratio"}));
    for (double lam : lams) {
        double prev_v = kNaN;
        double prev_gap = kNaN;
        for (long n : ns) {
            guarded_row(t, {xi, lam, static_cast<double>(n)}, [&] {
                const double v = rn_probe(xi, lam, n);
                const double gap = std::abs(v - prev_v);
                const double ratio = prev_gap / gap;
                // successive gaps must shrink by at least 2x once two gaps exist
                const bool ok = std::isnan(ratio) || ratio >= 2.0;
                prev_v = v;
                prev_gap = gap;
                return std::make_pair(std::vector<Cell>{v, -lam * lam / (2 * xi * xi), gap, ratio}, ok);
            });
        }
    }
    return t;
}

ResultTable cmd_ggc_bonlem(const Params& p, const RunConfig&)
{
    const auto ns = p.ints("n");
    const double tol = p.real("tol");
    ResultTable t;
    t.set_columns(with_status({"n", "quadrature", "closed_form", "diff", "tolerance", "asymptote",
                               "remainder"}));
    for (long n : ns) {
        guarded_row(t, {static_cast<double>(n)}, [&] {
            const double q = bonlem_integral(n);
            const double c = bonlem_closed_form(n);
            const double a = std::log(static_cast<double>(n)) + 1.0 + kEulerGamma;
            const double d = std::abs(q - c);
            return std::make_pair(std::vector<Cell>{q, c, d, tol, a, q - a}, d <= tol);
        });
    }
    return t;
}

//---------------------------------------------------------------------------//
// factor
//---------------------------------------------------------------------------//

ResultTable cmd_factor_arithmetic(const Params& p, const RunConfig&)
{
    const auto lams = p.reals("lambda");
    const auto pmax = p.ints("pmax");
    const double tol = p.real("tol");
    ResultTable t;
    t.set_columns(with_status({"lambda", "p_max", "value", "change", "tolerance"}));
    for (double lam : lams) {
        double prev = kNaN;
        for (long pm : pmax) {
            guarded_row(t, {lam, static_cast<double>(pm)}, [&] {
                const double v = arithmetic_factor(lam, pm);
                const double change = std::abs(v - prev);
                prev = v;
                return std::make_pair(std::vector<Cell>{v, change, tol}, std::isnan(change) || change <= tol);
            });
        }
    }
    return t;
}

using Handler = ResultTable (*)(const Params&, const RunConfig&);

struct Entry {
    CommandSpec spec;
    Handler handler;
};

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> entries = {
        {{"barnes", "eval", "log G(1+z) by all applicable routes, with pairwise agreement",
          {{"z", "0", "points, e.g. 0.5,0.3+0.4i or start:stop:count"},
           {"tol", "1e-8", "allowed disagreement beyond the routes' error estimates"}}},
         &cmd_barnes_eval},
        {{"barnes", "table", "log G(1+z) and G(1+z) by the dispatcher",
          {{"z", "-0.9:0.9:7", "points"}}},
         &cmd_barnes_table},
        {{"cue", "moments", "log E|Z_N|^{2 lambda}, optionally scaled",
          {{"n", "1,10,100", "matrix sizes"},
           {"lambda", "1", "exponents (complex allowed)"},
           {"scaling", "none", "none, lambda_sq or half_lambda_sq"}}},
         &cmd_cue_moments},
        {{"cue", "limit", "convergence of the scaled moments (or of the gamma-product limit) to 1",
          {{"lambda", "0.5,1,1.5", "exponents"},
           {"n", "100,1000,10000", "matrix sizes, increasing"},
           {"kind", "moments", "moments or thm14"}}},
         &cmd_cue_limit},
        {{"verify", "ks-identity", "Mellin residual of the gamma-product identity",
          {{"n", "1:50:50", "matrix sizes"}, {"t", "0.1,0.5,1,2,3.7", "exponents"}, {"tol", "1e-10", "tolerance"}}},
         &cmd_verify_ks},
        {{"verify", "beta-identity", "Mellin residual of the beta-product identity",
          {{"n", "1:50:50", "matrix sizes"}, {"t", "0.1,0.5,1,2,3.7", "exponents"}, {"tol", "1e-10", "tolerance"}}},
         &cmd_verify_beta},
        {{"verify", "haar", "Monte Carlo: Haar |det(I-U)| against exact moments and the beta product",
          {{"n", "8", "matrix size"}, {"samples", "200000", "draws per side"}, {"alpha", "0.01", "KS level"}}},
         &cmd_verify_haar},
        {{"verify", "q", "Q law: density mass, sampler Mellin moments, KS against the quadrature CDF",
          {{"samples", "100000", "draws"}, {"s", "-0.5,0.5,1,2", "Mellin exponents"}, {"alpha", "0.01", "KS level"}}},
         &cmd_verify_q},
        {{"ggc", "h", "H(lambda) for a Thorin measure",
          {{"measure", "1:1", "atoms mass:location,..."},
           {"lambda", "0.5,1,2", "arguments"},
           {"mode", "both", "paper, corrected or both"}}},
         &cmd_ggc_h},
        {{"ggc", "limit", "scaled Laplace transform of S_N against H(lambda)",
          {{"measure", "1:1", "atoms mass:location,..."},
           {"lambda", "0.5,1,2", "arguments"},
           {"n", "100,1000,10000", "block counts, increasing"}}},
         &cmd_ggc_limit},
        {{"ggc", "adjudicate", "which constant in H(lambda) matches the finite-N transform",
          {{"measure", "default", "'default' or atoms mass:location,..."},
           {"lambda", "0.5,1,2", "arguments"},
           {"n-coarse", "1000", "coarse block count"},
           {"n-fine", "10000", "fine block count"}}},
         &cmd_ggc_adjudicate},
        {{"ggc", "rn-probe", "the remainder integral R_N over increasing N",
          {{"xi", "1", "atom location"}, {"lambda", "0.5,1,2", "arguments"}, {"n", "100,1000,10000", "N values"}}},
         &cmd_ggc_rn_probe},
        {{"ggc", "bonlem", "quadrature of the bonlem integral against its closed form",
          {{"n", "1,10,100", "N values"}, {"tol", "1e-10", "tolerance"}}},
         &cmd_ggc_bonlem},
        {{"factor", "arithmetic", "arithmetic factor A(lambda) over increasing prime cutoffs",
          {{"lambda", "1,2", "arguments"}, {"pmax", "100000,200000", "prime cutoffs"}, {"tol", "1e-6", "allowed change"}}},
         &cmd_factor_arithmetic},
    };
    return entries;
}

const Entry& find_entry(const std::string& command)
{
    for (const auto& e : registry())
        if (e.spec.group + " " + e.spec.name == command)
            return e;
    throw ConfigError("unknown command '" + command + "'");
}

std::filesystem::path default_output_path(const RunConfig& cfg, const char* dir)
{
    std::string stem = cfg.command;
    std::replace(stem.begin(), stem.end(), ' ', '_');
    return std::filesystem::path(dir) / (stem + "." + cfg.format);
}

}  // namespace

std::vector<double> parse_real_grid(std::string_view text)
{
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        if (item.empty())
            throw ConfigError("empty grid entry in '" + std::string(text) + "'");
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(to_double(parts[0]));
        } else if (parts.size() == 3) {
            const double a = to_double(parts[0]);
            const double b = to_double(parts[1]);
            const long k = to_long(parts[2]);
            if (k < 1 || k > 10000000)
                throw ConfigError("range count must be in [1, 1e7]: '" + item + "'");
            for (long i = 0; i < k; ++i)
                out.push_back(k == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1));
        } else {
            throw ConfigError("grid entries are numbers or start:stop:count, got '" + item + "'");
        }
    }
    return out;
}

std::vector<long> parse_int_grid(std::string_view text)
{
    std::vector<long> out;
    for (double v : parse_real_grid(text)) {
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v)))
            throw ConfigError("grid value is not an integer: " + format_double(v));
        out.push_back(static_cast<long>(r));
    }
    return out;
}

ComplexScalar parse_complex(std::string_view text)
{
    std::string s = trim(text);
    if (s.empty())
        throw ConfigError("empty complex number");
    if (s.back() != 'i')
        return {to_double(s), 0.0};
    s.pop_back();
    // split at the last sign that is not a leading sign or an exponent sign
    std::size_t pos = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            pos = k;
            break;
        }
    }
    auto imag_part = [](std::string t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        if (t.front() == '+')
            t.erase(0, 1);
        return to_double(t);
    };
    if (pos == std::string::npos)
        return {0.0, imag_part(s)};
    return {to_double(s.substr(0, pos)), imag_part(s.substr(pos))};
}

std::vector<ComplexScalar> parse_complex_grid(std::string_view text)
{
    std::vector<ComplexScalar> out;
    for (const auto& item : split(text, ',')) {
        if (item.find(':') != std::string::npos) {
            for (double v : parse_real_grid(item))
                out.emplace_back(v, 0.0);
        } else {
            out.push_back(parse_complex(item));
        }
    }
    return out;
}

ThorinMeasure parse_measure(std::string_view text)
{
    ThorinMeasure m;
    for (const auto& item : split(text, ',')) {
        const auto parts = split(item, ':');
        if (parts.size() != 2)
            throw ConfigError("measure atoms are mass:location, got '" + item + "'");
        m.atoms.push_back({to_double(parts[0]), to_double(parts[1])});
    }
    try {
        m.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    return m;
}

const std::vector<CommandSpec>& command_specs()
{
    static const std::vector<CommandSpec> specs = [] {
        std::vector<CommandSpec> out;
        for (const auto& e : registry())
            out.push_back(e.spec);
        return out;
    }();
    return specs;
}

RunResult run(const RunConfig& config)
{
    if (config.format != "csv" && config.format != "json")
        throw ConfigError("format must be csv or json");
    const Entry& e = find_entry(config.command);
    const Params params(e.spec, config);

    RunResult res;
    ResultTable body;
    try {
        body = e.handler(params, config);
    } catch (const ParameterError& ex) {
        throw ConfigError(ex.what());
    } catch (const DomainError& ex) {
        throw ConfigError(ex.what());
    }
    // metadata first, in a fixed order
    ResultTable& t = res.table;
    t.set_meta("command", config.command);
    t.set_meta("build_id", BARNESG_BUILD_ID);
    t.set_meta("format", config.format);
    t.set_meta("seed", std::to_string(config.seed));
    for (const auto& o : e.spec.options)
        t.set_meta("param." + o.name, params.str(o.name));
    for (const auto& [k, v] : body.metadata())
        t.set_meta(k, v);
    std::vector<std::string> names;
    for (const auto& c : body.columns())
        names.push_back(c.name);
    t.set_columns(names);
    for (std::size_t r = 0; r < body.row_count(); ++r) {
        std::vector<Cell> row;
        for (const auto& c : body.columns())
            row.push_back(c.values[r]);
        t.add_row(std::move(row));
    }
    res.exit_code = t.all_pass() ? 0 : 1;
    return res;
}

std::string render(const ResultTable& table, const std::string& format)
{
    if (format == "json")
        return table.to_json();
    if (format == "csv")
        return table.to_csv();
    throw ConfigError("format must be csv or json");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Barnes G-function toolkit: special-function routes, unitary-ensemble moments, "
                 "samplers and GGC limits"};
    app.name("barnesg");
    app.require_subcommand(1);

    struct Leaf {
        CLI::App* app;
        std::string command;
        std::vector<std::pair<std::string, std::string>> values;  // option name -> storage
    };
    std::vector<std::unique_ptr<Leaf>> leaves;
    std::map<std::string, CLI::App*> groups;
    std::string format = "csv";
    std::string output;
    std::uint64_t seed = 0;

    for (const auto& spec : command_specs()) {
        CLI::App*& g = groups[spec.group];
        if (!g) {
            g = app.add_subcommand(spec.group, spec.group + " commands");
            g->require_subcommand(1);
        }
        auto leaf = std::make_unique<Leaf>();
        leaf->app = g->add_subcommand(spec.name, spec.help);
        leaf->command = spec.group + " " + spec.name;
        leaf->values.reserve(spec.options.size());
        for (const auto& o : spec.options) {
            leaf->values.emplace_back(o.name, o.default_value);
            leaf->app->add_option("--" + o.name, leaf->values.back().second, o.help)->capture_default_str();
        }
        leaf->app->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        leaf->app->add_option("--output", output, "output file (default: $BARNESG_OUTPUT_DIR or stdout)");
        leaf->app->add_option("--seed", seed, "random seed, recorded in the output")->capture_default_str();
        leaves.push_back(std::move(leaf));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    const Leaf* chosen = nullptr;
    for (const auto& l : leaves)
        if (l->app->parsed())
            chosen = l.get();
    if (!chosen) {
        err << "no command given\n";
        return 2;
    }

    RunConfig cfg;
    cfg.command = chosen->command;
    cfg.params = chosen->values;
    cfg.format = format;
    cfg.seed = seed;
    if (!output.empty())
        cfg.output = output;

    RunResult res;
    try {
        res = run(cfg);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    const std::string text = render(res.table, cfg.format);

    std::filesystem::path path;
    if (cfg.output) {
        path = *cfg.output;
    } else if (const char* dir = std::getenv("BARNESG_OUTPUT_DIR"); dir && *dir) {
        path = default_output_path(cfg, dir);
    }
    if (path.empty()) {
        out << text;
    } else {
        std::error_code ec;
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path(), ec);
        std::ofstream f(path, std::ios::binary);
        f << text;
        if (!f) {
            err << "error: cannot write " << path.string() << "\n";
            return 2;
        }
    }
    return res.exit_code;
}

}  // namespace barnesg::cli
