// test_cli.cpp — Output formats, presets and determinism of the command layer.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rcpt/app/commands.hpp"
#include "rcpt/app/io.hpp"
#include "rcpt/app/svg.hpp"
#include "rcpt/validation/oracles.hpp"

using namespace rcpt;
using namespace rcpt::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("rcpt_cli_tests_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& f) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const fs::path& f) {
    std::vector<std::string> out;
    std::ifstream in(f);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<double> fields(const std::string& line) {
    std::vector<double> v;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) v.push_back(std::stod(c));
    return v;
}

RunOptions options(const std::string& command, const fs::path& out) {
    RunOptions o;
    o.command = command;
    o.out = out;
    return o;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("range and number formatting") {
    const auto r = Range::parse("0.5:2:4");
    REQUIRE(r.values().size() == 4);
    CHECK(r.values()[1] == doctest::Approx(1.0));
    CHECK(r.values()[3] == 2.0);
    CHECK(Range::parse("3:3:1").values() == std::vector<double>{3.0});
    CHECK_THROWS_AS(Range::parse("0:1"), ParameterError);
    CHECK_THROWS_AS(Range::parse("0:1:0"), ParameterError);
    CHECK_THROWS_AS(Range::parse("0:1:3x"), ParameterError);
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("initial states") {
    CHECK(parse_initial_state("ground")(0, 0) == 1.0);
    CHECK(parse_initial_state("uniform")(2, 2).real() == doctest::Approx(1.0 / 3.0));
    const fs::path dir = scratch("init");
    fs::create_directories(dir);
    {
        std::ofstream(dir / "rho.json") << R"({"rho": [[0.5, 0, 0], [0, 0.25, [0.1, 0.05]], [0, [0.1, -0.05], 0.25]]})";
    }
    const auto rho = parse_initial_state("file:" + (dir / "rho.json").string());
    CHECK(rho(1, 2) == cplx(0.1, 0.05));
    CHECK(rho(2, 1) == cplx(0.1, -0.05));
    {
        std::ofstream(dir / "bad.json") << R"([[1, 0], [0, 0]])";
    }
    CHECK_THROWS_AS(parse_initial_state("file:" + (dir / "bad.json").string()), ParameterError);
    CHECK_THROWS_AS(parse_initial_state("thermal"), ParameterError);
}

TEST_CASE("parameter overrides") {
    ParamOverrides o;
    o.lambda = 4.0;
    o.temperature = 2.0;
    o.no_cutoff = true;
    const auto p = o.resolve(figure_preset(6));
    CHECK(p.lambda == 4.0);
    CHECK(p.temperature == 2.0);
    CHECK(std::isinf(p.cutoff));
    CHECK(p.omega == 10.0);
    o.delta = 1.5;
    CHECK_THROWS_AS(o.resolve(model::ModelParams{}), ParameterError);
    CHECK_THROWS_AS(figure_preset(1), ParameterError);
    CHECK_THROWS_AS(figure_preset(9), ParameterError);
}

TEST_CASE("map writes the effective Hamiltonian and spectrum") {
    const fs::path out = scratch("map");
    auto o = options("map", out);
    o.params.lambda = 5.0;
    CHECK(run_map(o) == kOk);
    const auto csv = lines(out / "map.csv");
    REQUIRE(csv.size() == 2);
    CHECK(csv[0] == "lambda,delta,e0,l,w,h,E0,Eminus,Eplus,phi,p2,q2,H11,H12,H13,H22,H23,H33");
    const auto v = fields(csv[1]);
    // p^2 against the vacuum-projection oracle in the closed-form labelling.
    const auto ref = oracle::closed_form_labels(oracle::spectrum_of(oracle::polaron_vacuum_hamiltonian(o.params, 60)));
    CHECK(v[10] == doctest::Approx(ref.p2).epsilon(1e-8));
    CHECK(v[10] == doctest::Approx(2.7e-6).epsilon(0.02));
    CHECK(fs::exists(out / "map.json"));
    const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
    CHECK(m["command"] == "map");
    CHECK(m["params"]["lambda"] == 5.0);
}

TEST_CASE("map at zero coupling returns the bare Hamiltonian") {
    const fs::path out = scratch("map0");
    auto o = options("map", out);
    o.params.lambda = 0.0;
    run_map(o);
    const auto v = fields(lines(out / "map.csv")[1]);
    CHECK(v[12] == 0.0);
    CHECK(v[13] == 0.0);
    CHECK(v[14] == 0.0);
    CHECK(v[15] == o.params.v - o.params.delta);
    CHECK(v[16] == 0.0);
    CHECK(v[17] == o.params.v);
}

TEST_CASE("sweep is deterministic and matches per-point files") {
    auto o = options("sweep", scratch("sweep_a"));
    o.axis = "delta";
    o.range = "0.01:0.5:9";
    o.params.lambda = 3.0;
    o.jobs = 3;
    run_sweep(o);
    auto o2 = o;
    o2.out = scratch("sweep_b");
    o2.jobs = 1;
    run_sweep(o2);
    const auto a = lines(o.out / "sweep.csv");
    REQUIRE(a.size() == 10);
    CHECK(a[0] == "lambda,delta,T,tau1,tau2,tau1_lowT,tau2_lowT,tau1_highT,tau2_highT,p2,q2,E0,Eminus,Eplus");
    CHECK(slurp(o.out / "sweep.csv") == slurp(o2.out / "sweep.csv"));
    for (int i = 0; i < 9; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "point_%04d.csv", i);
        const auto pt = lines(o.out / "points" / name);
        REQUIRE(pt.size() == 2);
        CHECK(pt[1] == a[i + 1]);
    }
    o.axis = "omega";
    CHECK_THROWS_AS(run_sweep(o), ParameterError);
}

TEST_CASE("dynamics and steady state outputs") {
    auto o = options("dynamics", scratch("dyn"));
    o.params.lambda = 1.0;
    o.points = 30;
    o.init = "ground";
    CHECK(run_dynamics(o) == kOk);
    const auto traj = lines(o.out / "trajectory.csv");
    REQUIRE(traj.size() == 31);
    CHECK(traj[0] == "t,rho11,rho22,rho33,re_rho32,im_rho32,trace_err,min_eig");
    const auto first = fields(traj[1]);
    CHECK(first[0] == doctest::Approx(1e-2));
    CHECK(first[1] + first[2] + first[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fs::exists(o.out / "trajectory.svg"));

    auto s = options("steadystate", scratch("ss"));
    s.params.lambda = 1.0;
    CHECK(run_steadystate(s) == kOk);
    const auto ss = lines(s.out / "steadystate.csv");
    REQUIRE(ss.size() == 2);
    CHECK(ss[0] == "lambda,method,rho11,rho22,rho33,re_rho32,im_rho32,residual");
    CHECK(ss[1].rfind("1,effh,", 0) == 0);
}

TEST_CASE("figure presets write CSV and log-axis SVG") {
    for (int id : {2, 3, 4, 5, 8}) {
        auto o = options("figure", scratch("fig" + std::to_string(id)));
        o.figure = id;
        o.params = figure_preset(id);
        o.points = 60;
        CAPTURE(id);
        CHECK(run_figure(o) == kOk);
        const std::string svg = slurp(o.out / ("fig" + std::to_string(id) + ".svg"));
        CHECK(svg.rfind("<svg", 0) == 0);
        if (id != 2 && id != 4) CHECK(svg.find(">1e") != std::string::npos);
    }
    const fs::path out8 = fs::temp_directory_path() / "rcpt_cli_tests_fig8";
    CHECK(lines(out8 / "fig8_markers.csv").size() == 5);
    CHECK(slurp(out8 / "fig8.svg").find(">tau2<") != std::string::npos);
}

TEST_CASE("RC figure stops at the wall-clock budget and keeps partial data") {
    auto o = options("figure", scratch("budget"));
    o.figure = 7;
    o.params = figure_preset(7);
    o.budget_s = 1e-3;
    CHECK_THROWS_AS(run_figure(o), BudgetExceeded);
    const auto csv = lines(o.out / "fig7.csv");
    CHECK(csv.size() == 3);  // header + EFFH and RC rows of the first point
}

TEST_CASE("svg axes") {
    Panel p{"t", "x", "y", true, true, {{"a", {1e-2, 1, 1e3}, {1, 10, 100}, "", false}}, {{5.0, "m", "#000"}}};
    const std::string s = render_svg(Plot{"title", 1, {p}});
    CHECK(s.find(">1e-2<") != std::string::npos);
    CHECK(s.find(">1e3<") != std::string::npos);
    CHECK(s.find(">m<") != std::string::npos);
    // Non-positive values are skipped on log axes instead of producing NaN coordinates.
    p.series[0].y[0] = 0.0;
    CHECK(render_svg(Plot{"", 1, {p}}).find("nan") == std::string::npos);
}

}
