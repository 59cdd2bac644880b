#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "gi/io.hpp"

using namespace gi;
namespace {

SweepResult tiny_sweep() {
    const auto f = [](double n, const Vec& x) {
        return (x[0] - 0.25) * (x[0] - 0.25) + 1.0 / n;
    };
    SearchBox box;
    box.add("beta", 0.0, 1.0);
    SweepResult r = sweep(f, {1.0, 10.0, 100.0}, box);
    r.meta["command"] = "sweep";
    r.meta["config"] = "demo";
    return r;
}

} // namespace

TEST_CASE("parse a full sweep command") {
    const RunSpec s = parse_args({"sweep", "--config", "pp", "--eta", "1.0", "--ntot",
                                  "0.1:100:40:log", "--out", "pp.csv"});
    CHECK(s.command == "sweep");
    CHECK(s.config == "pp");
    CHECK(s.eta == 1.0);
    CHECK(!s.ngrid.single);
    CHECK(s.ngrid.lo == 0.1);
    CHECK(s.ngrid.hi == 100.0);
    CHECK(s.ngrid.count == 40);
    CHECK(s.ngrid.log_scale);
    CHECK(s.out == "pp.csv");
}

TEST_CASE("parse single-point commands and explicit parameters") {
    const RunSpec q = parse_args({"qfi", "--config", "qfi-active", "--alpha", "1.2",
                                  "--gamma", "0.3", "--r", "0.9", "--theta", "3.14"});
    CHECK(q.command == "qfi");
    CHECK(q.params.at("alpha") == 1.2);
    CHECK(q.params.at("r") == 0.9);

    const RunSpec v = parse_args({"verify", "--suite", "clbi2"});
    CHECK(v.command == "verify");
    CHECK(v.suite == "clbi2");

    const RunSpec o = parse_args({"optimize", "--config", "aa", "--ntot", "10", "--seed", "7"});
    CHECK(o.ngrid.single);
    CHECK(o.ngrid.lo == 10.0);
    CHECK(o.seed == 7);
}

TEST_CASE("unknown flags are usage errors naming the token") {
    try {
        parse_args({"sweep", "--config", "pp", "--foo", "3"});
        FAIL("expected usage_error");
    } catch (const usage_error& e) {
        CHECK(std::string(e.what()).find("--foo") != std::string::npos);
    }
}

TEST_CASE("malformed inputs are usage errors") {
    CHECK_THROWS_AS(parse_args({"sweep", "--config", "nope", "--ntot", "1:10:5:log"}),
                    usage_error);
    CHECK_THROWS_AS(parse_args({"sweep", "--config", "pp", "--ntot", "1:10:5:cubic"}),
                    usage_error);
    CHECK_THROWS_AS(parse_args({"sweep", "--config", "pp", "--ntot", "-1:10:5:log"}),
                    usage_error);
    CHECK_THROWS_AS(parse_args({"frobnicate"}), usage_error);
    CHECK_THROWS_AS(parse_args({"sweep", "--ntot", "1:10:5:log"}), usage_error);
    CHECK_THROWS_AS(parse_args({"sensitivity", "--config", "pp", "--ntot", "1:10:5:log"}),
                    usage_error);
    CHECK_THROWS_AS(parse_args({"qfi", "--config", "pp"}), usage_error);
}

TEST_CASE("n grids") {
    const RunSpec lin = parse_args({"sweep", "--config", "pp", "--ntot", "1:3:3:linear"});
    const std::vector<double> v = lin.ngrid.values();
    REQUIRE(v.size() == 3);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(2.0));
    CHECK(v[2] == doctest::Approx(3.0));

    const RunSpec lg = parse_args({"sweep", "--config", "pp", "--ntot", "1:100:3:log"});
    const std::vector<double> w = lg.ngrid.values();
    CHECK(w[1] == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("csv has meta comments, a header, and 17 significant digits") {
    const SweepResult r = tiny_sweep();
    const std::string csv = emit_csv(r);
    CHECK(csv.find("# command: sweep\n") != std::string::npos);
    CHECK(csv.find("n_tot,value,beta") != std::string::npos);

    // the value round-trips through its textual form
    const size_t hdr = csv.find("n_tot,value,beta\n");
    std::stringstream rows(csv.substr(hdr + 17));
    std::string line;
    REQUIRE(std::getline(rows, line));
    double n, val, beta;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &n, &val, &beta) == 3);
    CHECK(n == r.points[0].n_tot);
    CHECK(val == r.points[0].value);
    CHECK(beta == r.points[0].params(0));
}

TEST_CASE("csv of an all-failed sweep is header only") {
    const auto f = [](double, const Vec&) -> double { throw infeasible_params("no"); };
    SearchBox box;
    box.add("x", 0.0, 1.0);
    const SweepResult r = sweep(f, {1.0, 2.0}, box);
    const std::string csv = emit_csv(r);
    CHECK(csv.find("n_tot,value,x\n") != std::string::npos);
    CHECK(csv.substr(csv.find("n_tot")).find("\n") == csv.substr(csv.find("n_tot")).size() - 1);
}

TEST_CASE("json round-trips exactly") {
    const SweepResult r = tiny_sweep();
    const SweepResult back = sweep_from_json(emit_json(r));
    REQUIRE(back.points.size() == r.points.size());
    CHECK(back.param_names == r.param_names);
    CHECK(back.meta.at("config") == "demo");
    for (size_t i = 0; i < r.points.size(); ++i) {
        CHECK(back.points[i].n_tot == r.points[i].n_tot);
        CHECK(back.points[i].value == r.points[i].value);
        CHECK(back.points[i].ok == r.points[i].ok);
        CHECK((back.points[i].params - r.points[i].params).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("svg contains the frame, three curves, and reference labels") {
    const std::string svg = emit_svg(tiny_sweep());
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<desc>") != std::string::npos);
    CHECK(svg.find("config: demo") != std::string::npos);
    size_t n = 0;
    for (size_t p = svg.find("<polyline"); p != std::string::npos;
         p = svg.find("<polyline", p + 1))
        ++n;
    CHECK(n == 3);
    CHECK(svg.find("shot noise") != std::string::npos);
    CHECK(svg.find("Heisenberg") != std::string::npos);
}

TEST_CASE("emission is byte deterministic") {
    const SweepResult a = tiny_sweep();
    const SweepResult b = tiny_sweep();
    CHECK(emit_csv(a) == emit_csv(b));
    CHECK(emit_json(a) == emit_json(b));
    CHECK(emit_svg(a) == emit_svg(b));
}

TEST_CASE("default boxes and objectives cover every configuration") {
    for (const std::string c : {"pp", "pa", "ap", "aa", "qfi-passive", "qfi-active"}) {
        const SearchBox box = default_box(c);
        CHECK(box.dims() >= 1);
        const FamilyObjective f = objective_for(c, 1.0, 3.0);
        Vec mid(box.dims());
        for (int d = 0; d < box.dims(); ++d)
            mid(d) = 0.5 * (box.bounds[d].first + box.bounds[d].second);
        // objective evaluates (or throws a domain error) at the box center
        try {
            const double v = f(2.0, mid);
            CHECK(std::isfinite(v));
        } catch (const gi::error&) {
        }
        CHECK(is_maximization(c) == (c.rfind("qfi", 0) == 0));
    }
    CHECK_THROWS_AS(default_box("nope"), usage_error);
}

TEST_CASE("verify suites pass") {
    for (const VerifyRow& r : run_verify("all")) {
        INFO(r.name << " residual " << r.residual);
        CHECK(r.pass);
    }
    CHECK_THROWS_AS(run_verify("bogus"), usage_error);
}
