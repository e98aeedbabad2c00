#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "barnesg/cli/commands.hpp"
#include "barnesg/cli/result_table.hpp"

using namespace barnesg;
using namespace barnesg::cli;

namespace {

int invoke(std::vector<std::string> args, std::string& out, std::string& err)
{
    args.insert(args.begin(), "barnesg");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream o, e;
    const int rc = main_entry(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str();
    err = e.str();
    return rc;
}

double num(const ResultTable& t, const std::string& col, std::size_t row)
{
    return std::get<double>(t.column(col)->values.at(row));
}

bool flag(const ResultTable& t, const std::string& col, std::size_t row)
{
    return std::get<bool>(t.column(col)->values.at(row));
}

}  // namespace

TEST_CASE("grid parsing")
{
    CHECK(parse_real_grid("1,2.5,-3") == std::vector<double>{1, 2.5, -3});
    CHECK(parse_real_grid("0:1:5") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK(parse_real_grid("2:9:1") == std::vector<double>{2});
    CHECK(parse_int_grid("1:50:50").size() == 50);
    CHECK(parse_int_grid("1:50:50").back() == 50);
    CHECK(parse_int_grid("100,1000,10000") == std::vector<long>{100, 1000, 10000});
    CHECK_THROWS_AS(parse_int_grid("1.5"), ConfigError);
    CHECK_THROWS_AS(parse_real_grid("1,,2"), ConfigError);
    CHECK_THROWS_AS(parse_real_grid("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_real_grid("abc"), ConfigError);
    CHECK_THROWS_AS(parse_real_grid("nan"), ConfigError);
}

TEST_CASE("complex and measure parsing")
{
    CHECK(parse_complex("0.5") == ComplexScalar(0.5, 0));
    CHECK(parse_complex("0.3+0.4i") == ComplexScalar(0.3, 0.4));
    CHECK(parse_complex("-1.5-2i") == ComplexScalar(-1.5, -2));
    CHECK(parse_complex("2i") == ComplexScalar(0, 2));
    CHECK(parse_complex("-i") == ComplexScalar(0, -1));
    CHECK(parse_complex("1e-3+2e+1i") == ComplexScalar(1e-3, 20));
    CHECK_THROWS_AS(parse_complex("1+xi"), ConfigError);
    const auto g = parse_complex_grid("0.5i,-1:1:3");
    REQUIRE(g.size() == 4);
    CHECK(g[0] == ComplexScalar(0, 0.5));
    CHECK(g[3] == ComplexScalar(1, 0));
    const auto m = parse_measure("1:1,2:2");
    REQUIRE(m.atoms.size() == 2);
    CHECK(m.atoms[1].mass == 2.0);
    CHECK_THROWS_AS(parse_measure("1"), ConfigError);
    CHECK_THROWS_AS(parse_measure("-1:1"), ConfigError);
}

TEST_CASE("doubles are written with 17 significant digits")
{
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5e-300) == "-2.5e-300");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-INFINITY) == "-inf");
    for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-310, 123456789.123456789}) {
        const auto s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("result tables round-trip through CSV and JSON")
{
    ResultTable t;
    t.set_meta("command", "x y");
    t.set_meta("note", "a=b, c");
    t.set_columns({"v", "pass", "label"});
    t.add_row({1.0 / 3.0, true, std::string("plain")});
    t.add_row({std::nan(""), false, std::string("with, comma \"and quote\"")});
    t.add_row({-INFINITY, true, std::string("3.5")});
    CHECK_THROWS(t.add_row({1.0}));
    CHECK_THROWS(t.set_columns({"other"}));
    CHECK_FALSE(t.all_pass());

    for (const std::string fmt : {"csv", "json"}) {
        CAPTURE(fmt);
        const std::string text = render(t, fmt);
        const auto back = fmt == "csv" ? ResultTable::from_csv(text) : ResultTable::from_json(text);
        CHECK(back.metadata() == t.metadata());
        REQUIRE(back.columns().size() == 3);
        REQUIRE(back.row_count() == 3);
        CHECK(num(back, "v", 0) == 1.0 / 3.0);
        CHECK(std::isnan(num(back, "v", 1)));
        CHECK(num(back, "v", 2) == -INFINITY);
        CHECK(flag(back, "pass", 0));
        CHECK_FALSE(flag(back, "pass", 1));
        CHECK(std::get<std::string>(back.column("label")->values[1]) == "with, comma \"and quote\"");
        // strings that look numeric stay strings
        CHECK(std::get<std::string>(back.column("label")->values[2]) == "3.5");
        CHECK(render(back, fmt) == text);
    }
}

TEST_CASE("barnes eval at z = 0")
{
    RunConfig cfg;
    cfg.command = "barnes eval";
    cfg.params = {{"z", "0"}};
    const auto r = run(cfg);
    CHECK(r.exit_code == 0);
    const auto& t = r.table;
    REQUIRE(t.row_count() == 1);
    for (const char* c : {"product_re", "series_re", "integral_re", "dispatch_re"})
        CHECK(num(t, c, 0) == 0.0);
    CHECK(flag(t, "pass", 0));
    CHECK(t.meta("seed") == "0");
    CHECK(t.meta("param.tol") == "1e-8");
    CHECK(t.meta("build_id").has_value());
}

TEST_CASE("cue limit at lambda = 1 tends to 1 from above")
{
    RunConfig cfg;
    cfg.command = "cue limit";
    cfg.params = {{"lambda", "1"}, {"n", "100,1000,10000"}};
    const auto r = run(cfg);
    CHECK(r.exit_code == 0);
    for (std::size_t i = 0; i < 3; ++i) {
        const double n = num(r.table, "n", i);
        CHECK(num(r.table, "value", i) == doctest::Approx((n + 1) / n).epsilon(1e-11));
        CHECK(flag(r.table, "decreasing", i));
    }
}

TEST_CASE("pass flags are reproducible from the emitted columns")
{
    RunConfig cfg;
    cfg.command = "verify beta-identity";
    cfg.params = {{"n", "1:6:6"}, {"t", "0.5,2"}};
    const auto r = run(cfg);
    CHECK(r.exit_code == 0);
    for (std::size_t i = 0; i < r.table.row_count(); ++i)
        CHECK(flag(r.table, "pass", i) == (std::abs(num(r.table, "residual", i)) <= num(r.table, "tolerance", i)));

    cfg.command = "verify q";
    cfg.params = {{"samples", "20000"}};
    cfg.seed = 5;
    const auto q = run(cfg);
    for (std::size_t i = 0; i < q.table.row_count(); ++i)
        CHECK(flag(q.table, "pass", i)
              == (std::abs(num(q.table, "value", i) - num(q.table, "target", i)) <= num(q.table, "tolerance", i)));
}

TEST_CASE("numeric errors stay in their row")
{
    RunConfig cfg;
    cfg.command = "verify ks-identity";
    cfg.params = {{"n", "2"}, {"t", "1,-2"}};
    const auto r = run(cfg);
    CHECK(r.exit_code == 1);
    REQUIRE(r.table.row_count() == 2);
    CHECK(flag(r.table, "pass", 0));
    CHECK_FALSE(flag(r.table, "pass", 1));
    CHECK(std::isnan(num(r.table, "residual", 1)));
    CHECK_FALSE(std::get<std::string>(r.table.column("error")->values[1]).empty());
}

TEST_CASE("configuration errors")
{
    RunConfig cfg;
    cfg.command = "barnes nothing";
    CHECK_THROWS_AS(run(cfg), ConfigError);
    cfg.command = "barnes eval";
    cfg.params = {{"bogus", "1"}};
    CHECK_THROWS_AS(run(cfg), ConfigError);
    cfg.params = {};
    cfg.format = "xml";
    CHECK_THROWS_AS(run(cfg), ConfigError);

    std::string out, err;
    CHECK(invoke({"cue", "limit", "--n", "1,x"}, out, err) == 2);
    CHECK(invoke({"verify", "haar", "--n", "65"}, out, err) == 2);
    CHECK(invoke({"barnes", "eval", "--format", "xml"}, out, err) == 2);
    CHECK(invoke({"nope"}, out, err) == 2);
    CHECK(invoke({}, out, err) == 2);
    CHECK(invoke({"--help"}, out, err) == 0);
}

TEST_CASE("command line: exit status, output routing, determinism")
{
    std::string out, err;
    CHECK(invoke({"barnes", "eval", "--z", "-0.5,0.3+0.4i"}, out, err) == 0);
    CHECK(out.find("# command=barnes eval") == 0);
    CHECK(invoke({"verify", "ks-identity", "--n", "2", "--t", "-2"}, out, err) == 1);

    std::string a, b;
    CHECK(invoke({"verify", "haar", "--n", "4", "--samples", "3000", "--seed", "42"}, a, err) == 0);
    CHECK(invoke({"verify", "haar", "--n", "4", "--samples", "3000", "--seed", "42"}, b, err) == 0);
    CHECK(a == b);
    CHECK(a.find("# seed=42") != std::string::npos);
    invoke({"verify", "haar", "--n", "4", "--samples", "3000", "--seed", "43"}, b, err);
    CHECK(a != b);

    const auto dir = std::filesystem::temp_directory_path() / "barnesg_cli_test";
    std::filesystem::remove_all(dir);
    const auto file = dir / "sub" / "t.json";
    CHECK(invoke({"ggc", "bonlem", "--format", "json", "--output", file.string()}, out, err) == 0);
    CHECK(out.empty());
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    const auto t = ResultTable::from_json(ss.str());
    CHECK(t.meta("command") == "ggc bonlem");
    CHECK(t.row_count() == 3);

    ::setenv("BARNESG_OUTPUT_DIR", dir.string().c_str(), 1);
    CHECK(invoke({"factor", "arithmetic", "--lambda", "1", "--pmax", "1000"}, out, err) == 0);
    ::unsetenv("BARNESG_OUTPUT_DIR");
    CHECK(out.empty());
    CHECK(std::filesystem::exists(dir / "factor_arithmetic.csv"));
    std::filesystem::remove_all(dir);
}
