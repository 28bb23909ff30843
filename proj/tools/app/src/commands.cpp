// commands.cpp — map, timescales, dynamics, steadystate, sweep and validate.

#include "rcpt/app/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "rcpt/app/io.hpp"
#include "rcpt/app/svg.hpp"
#include "rcpt/mapping.hpp"
#include "rcpt/params_io.hpp"
#include "rcpt/timescales.hpp"
#include "rcpt/validation/battery.hpp"

namespace rcpt::app {

using json = nlohmann::json;
namespace fs = std::filesystem;

model::ModelParams ParamOverrides::resolve(model::ModelParams base) const {
    if (params_file) base = model::load_params(*params_file, base);
    if (lambda) base.lambda = *lambda;
    if (delta) base.delta = *delta;
    if (temperature) base.temperature = *temperature;
    if (omega) base.omega = *omega;
    if (gamma) base.gamma = *gamma;
    if (cutoff) base.cutoff = *cutoff;
    if (no_cutoff) base.cutoff = std::numeric_limits<double>::infinity();
    for (const auto& w : model::validate(base)) std::cerr << "warning: " << w << '\n';
    return base;
}

Range Range::parse(const std::string& text) {
    Range r;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.from, &r.to, &r.count, &extra) != 3 || r.count < 1 ||
        !std::isfinite(r.from) || !std::isfinite(r.to))
        throw ParameterError("--range must be a:b:n with n >= 1, got \"" + text + "\"");
    if (r.count == 1 && r.from != r.to) throw ParameterError("--range with n = 1 needs a == b");
    return r;
}

std::vector<double> Range::values() const {
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(count == 1 ? from : from + (to - from) * i / (count - 1));
    return v;
}

Eigen::Matrix3cd parse_initial_state(const std::string& spec) {
    if (spec == "uniform") return redfield::uniform_state();
    if (spec == "ground") return redfield::ground_state();
    if (spec.rfind("file:", 0) != 0) throw ParameterError("--init must be uniform, ground or file:<path>");
    const fs::path file = spec.substr(5);
    std::ifstream in(file);
    if (!in) throw ParameterError("cannot read initial state " + file.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParameterError("initial state " + file.string() + ": " + e.what());
    }
    if (doc.is_object() && doc.contains("rho")) doc = doc["rho"];
    if (!doc.is_array() || doc.size() != 3) throw ParameterError(file.string() + ": expected a 3x3 array");
    Eigen::Matrix3cd rho;
    for (int i = 0; i < 3; ++i) {
        if (!doc[i].is_array() || doc[i].size() != 3) throw ParameterError(file.string() + ": expected a 3x3 array");
        for (int k = 0; k < 3; ++k) {
            const auto& e = doc[i][k];
            if (e.is_number())
                rho(i, k) = e.get<double>();
            else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
                rho(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
            else
                throw ParameterError(file.string() + ": entry (" + std::to_string(i) + "," + std::to_string(k) +
                                     ") must be a number or [re, im]");
        }
    }
    return rho;
}

json manifest(const RunOptions& opt) {
    json m;
    m["command"] = opt.command;
    m["params"] = json::parse(model::params_to_json(opt.params));
    if (opt.overrides.params_file) m["params_file"] = *opt.overrides.params_file;
    json o;
    if (opt.command == "dynamics" || opt.command == "steadystate") {
        o["method"] = redfield::to_string(opt.method);
        o["rc_levels"] = opt.rc_levels;
    }
    if (opt.command == "dynamics") {
        o["init"] = opt.init;
        o["t_min"] = opt.t_min;
        o["t_max"] = opt.t_max;
        o["points"] = opt.points;
    }
    if (opt.command == "sweep") {
        o["axis"] = opt.axis;
        o["range"] = opt.range;
    }
    if (opt.command == "figure") {
        o["figure"] = opt.figure;
        o["rc_levels"] = opt.rc_levels;
        o["budget_s"] = opt.budget_s;
    }
    if (opt.command == "validate") {
        o["only"] = opt.only;
        o["tolerance_scale"] = opt.tolerance_scale;
        o["invariants"] = opt.invariants;
    }
    m["options"] = o.is_null() ? json::object() : o;
    m["output_dir"] = opt.out.string();
    return m;
}

void write_manifest(const RunOptions& opt) {
    ensure_directory(opt.out);
    write_json(opt.out / "manifest.json", manifest(opt));
}

const std::vector<std::string>& sweep_header() {
    static const std::vector<std::string> h{"lambda", "delta", "T", "tau1", "tau2", "tau1_lowT", "tau2_lowT",
                                            "tau1_highT", "tau2_highT", "p2", "q2", "E0", "Eminus", "Eplus"};
    return h;
}

const std::vector<std::string>& trajectory_header() {
    static const std::vector<std::string> h{"t", "rho11", "rho22", "rho33", "re_rho32", "im_rho32", "trace_err", "min_eig"};
    return h;
}

const std::vector<std::string>& steady_header() {
    static const std::vector<std::string> h{"lambda", "method", "rho11", "rho22", "rho33", "re_rho32", "im_rho32", "residual"};
    return h;
}

namespace {

void sweep_row(CsvWriter& csv, const timescales::Analysis& a) {
    const auto& p = a.params;
    const auto& s = a.spectrum;
    csv.row({p.lambda, p.delta, p.temperature, a.full.tau1, a.full.tau2_or_inf(), a.low_t.tau1, a.low_t.tau2_or_inf(),
             a.high_t.tau1, a.high_t.tau2_or_inf(), s.p2(), s.q2(), s.e0, s.e_minus, s.e_plus});
}

void write_trajectory(const fs::path& file, const std::vector<redfield::ObservableRow>& rows) {
    CsvWriter csv(file, trajectory_header());
    for (const auto& r : rows)
        csv.row({r.t, r.rho11, r.rho22, r.rho33, r.re_rho32, r.im_rho32, r.trace_error, r.min_eigenvalue});
}

json matrix_json(const Eigen::MatrixXd& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        a.push_back(row);
    }
    return a;
}

json complex_matrix_json(const MatrixXcd& m) {
    json a = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
        a.push_back(row);
    }
    return a;
}

json tau_json(const timescales::TimescalePair& t) {
    return {{"tau1", t.tau1}, {"tau2", t.tau2 ? json(*t.tau2) : json(nullptr)}};
}

} // namespace

int run_map(const RunOptions& opt) {
    write_manifest(opt);
    const auto& p = opt.params;
    const Eigen::Matrix3d h = mapping::effective_hamiltonian(p).entries().real();
    const auto b = mapping::effective_blocks(p);
    const auto s = mapping::diagonalize_effective(p);

    json doc;
    doc["params"] = json::parse(model::params_to_json(p));
    doc["hamiltonian"] = matrix_json(h);
    doc["blocks"] = {{"e0", b.e0}, {"l", b.l}, {"w", b.w}, {"h", b.h}};
    doc["spectrum"] = {{"E0", s.e0}, {"Eminus", s.e_minus}, {"Eplus", s.e_plus}, {"phi", s.phi},
                       {"p", s.p}, {"q", s.q}, {"p2", s.p2()}, {"q2", s.q2()}, {"basis", matrix_json(s.basis)}};
    write_json(opt.out / "map.json", doc);

    CsvWriter csv(opt.out / "map.csv", {"lambda", "delta", "e0", "l", "w", "h", "E0", "Eminus", "Eplus", "phi", "p2",
                                        "q2", "H11", "H12", "H13", "H22", "H23", "H33"});
    csv.row({p.lambda, p.delta, b.e0, b.l, b.w, b.h, s.e0, s.e_minus, s.e_plus, s.phi, s.p2(), s.q2(), h(0, 0), h(0, 1),
             h(0, 2), h(1, 1), h(1, 2), h(2, 2)});

    std::cout << "E0 = " << format_number(s.e0) << ", E- = " << format_number(s.e_minus)
              << ", E+ = " << format_number(s.e_plus) << "\np^2 = " << format_number(s.p2())
              << ", q^2 = " << format_number(s.q2()) << "\nwrote " << (opt.out / "map.json").string() << ", "
              << (opt.out / "map.csv").string() << '\n';
    return kOk;
}

int run_timescales(const RunOptions& opt) {
    write_manifest(opt);
    const auto a = timescales::analyze(opt.params);
    json doc;
    doc["params"] = json::parse(model::params_to_json(opt.params));
    doc["rates"] = {{"gamma_up_plus", a.rates.gamma_up_plus}, {"gamma_up_minus", a.rates.gamma_up_minus},
                    {"gamma_down_plus", a.rates.gamma_down_plus}, {"gamma_down_minus", a.rates.gamma_down_minus},
                    {"E_plus_0", a.rates.e_plus_0}, {"E_minus_0", a.rates.e_minus_0}};
    doc["rate_matrix"] = matrix_json(a.rate_matrix.m);
    doc["full"] = tau_json(a.full);
    doc["low_temperature"] = tau_json(a.low_t);
    doc["high_temperature"] = tau_json(a.high_t);
    doc["secular_ratio"] = a.secular_ratio;
    doc["p2"] = a.spectrum.p2();
    doc["q2"] = a.spectrum.q2();
    write_json(opt.out / "timescales.json", doc);
    CsvWriter csv(opt.out / "timescales.csv", sweep_header());
    sweep_row(csv, a);

    std::cout << "tau1 = " << format_number(a.full.tau1) << ", tau2 = " << format_number(a.full.tau2_or_inf())
              << "\nlow-T: tau1 = " << format_number(a.low_t.tau1) << ", tau2 = " << format_number(a.low_t.tau2_or_inf())
              << "\nhigh-T: tau1 = " << format_number(a.high_t.tau1)
              << ", tau2 = " << format_number(a.high_t.tau2_or_inf()) << '\n';
    if (a.secular_ratio < 10.0)
        std::cerr << "warning: min Bohr frequency / max rate = " << format_number(a.secular_ratio)
                  << "; the secular rate picture is marginal here\n";
    return kOk;
}

int run_dynamics(const RunOptions& opt) {
    redfield::SimulationConfig cfg;
    cfg.method = opt.method;
    cfg.rc_levels = opt.rc_levels;
    cfg.params = opt.params;
    cfg.initial_state = parse_initial_state(opt.init);
    if (opt.points < 2) throw ParameterError("--points must be >= 2");
    cfg.grid = redfield::TimeGrid::log_spaced(opt.t_min, opt.t_max, opt.points);
    redfield::validate(cfg);
    write_manifest(opt);

    const auto t0 = std::chrono::steady_clock::now();
    const auto sim = redfield::simulate(cfg);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_trajectory(opt.out / "trajectory.csv", sim.rows);

    double trace = 0.0, herm = 0.0, min_eig = 1.0;
    for (std::size_t k = 0; k < sim.trajectory.times.size(); ++k) {
        trace = std::max(trace, sim.trajectory.trace_error[k]);
        herm = std::max(herm, sim.trajectory.hermiticity_error[k]);
        min_eig = std::min(min_eig, sim.trajectory.min_eigenvalue[k]);
    }
    json doc;
    doc["method"] = redfield::to_string(opt.method);
    doc["dimension"] = sim.system.dim();
    doc["condition_estimate"] = sim.trajectory.condition_estimate;
    doc["used_runge_kutta"] = sim.trajectory.used_runge_kutta;
    doc["max_trace_error"] = trace;
    doc["max_hermiticity_error"] = herm;
    doc["min_eigenvalue"] = min_eig;
    doc["final_state"] = complex_matrix_json(sim.system.to_site(sim.trajectory.states.back()));
    doc["runtime_s"] = elapsed;

    Panel pops{"populations", "t", "population", true, false, {}, {}};
    Panel coh{"coherence rho32", "t", "rho32", true, false, {}, {}};
    std::vector<double> t, r11, r22, r33, re, im;
    for (const auto& r : sim.rows) {
        t.push_back(r.t);
        r11.push_back(r.rho11);
        r22.push_back(r.rho22);
        r33.push_back(r.rho33);
        re.push_back(r.re_rho32);
        im.push_back(r.im_rho32);
    }
    pops.series = {{"rho11", t, r11, "", false}, {"rho22", t, r22, "", false}, {"rho33", t, r33, "", false}};
    coh.series = {{"Re", t, re, "", false}, {"Im", t, im, "", true}};
    try {
        const auto a = timescales::analyze(opt.params);
        doc["tau1"] = a.full.tau1;
        doc["tau2"] = a.full.tau2 ? json(*a.full.tau2) : json(nullptr);
        pops.vlines = {{a.full.tau1, "tau1", "#555555"}};
        if (a.full.tau2) pops.vlines.push_back({*a.full.tau2, "tau2", "#555555"});
        coh.vlines = pops.vlines;
    } catch (const ParameterError&) {
        // no analytic markers (e.g. lambda = 0)
    }
    write_json(opt.out / "dynamics.json", doc);
    write_svg(opt.out / "trajectory.svg",
              Plot{"dynamics (" + redfield::to_string(opt.method) + ", lambda = " + format_number(opt.params.lambda) + ")",
                   2, {pops, coh}});

    const auto& last = sim.rows.back();
    std::cout << redfield::to_string(opt.method) << " dynamics, " << sim.rows.size() << " points, " << elapsed
              << " s\nfinal populations " << format_number(last.rho11) << ", " << format_number(last.rho22) << ", "
              << format_number(last.rho33) << "\nmax trace error " << format_number(trace) << ", max hermiticity error "
              << format_number(herm) << ", min eigenvalue " << format_number(min_eig) << '\n';
    if (min_eig < -1e-3)
        std::cerr << "warning: transient density matrix has eigenvalue " << format_number(min_eig)
                  << " (Redfield does not guarantee positivity)\n";
    return kOk;
}

int run_steadystate(const RunOptions& opt) {
    if (opt.rc_levels < 1) throw ParameterError("--rc-levels must be >= 1");
    write_manifest(opt);
    const auto ss = redfield::site_steady_state(opt.method, opt.params, opt.rc_levels);
    CsvWriter csv(opt.out / "steadystate.csv", steady_header());
    csv.cell(opt.params.lambda).cell(redfield::to_string(opt.method));
    csv.cell(ss.rho(0, 0).real()).cell(ss.rho(1, 1).real()).cell(ss.rho(2, 2).real());
    csv.cell(ss.rho(2, 1).real()).cell(ss.rho(2, 1).imag()).cell(ss.residual);
    csv.end_row();
    std::cout << "steady state (" << redfield::to_string(opt.method) << "): populations " << format_number(ss.rho(0, 0).real())
              << ", " << format_number(ss.rho(1, 1).real()) << ", " << format_number(ss.rho(2, 2).real()) << "; rho32 = "
              << format_number(ss.rho(2, 1).real()) << (ss.rho(2, 1).imag() < 0 ? " - " : " + ")
              << format_number(std::abs(ss.rho(2, 1).imag())) << "i; residual " << format_number(ss.residual) << '\n';
    return kOk;
}

int run_sweep(const RunOptions& opt) {
    if (opt.axis != "lambda" && opt.axis != "delta" && opt.axis != "temperature")
        throw ParameterError("--axis must be lambda, delta or temperature");
    const auto values = Range::parse(opt.range).values();
    std::vector<model::ModelParams> points;
    for (double x : values) {
        auto p = opt.params;
        (opt.axis == "lambda" ? p.lambda : opt.axis == "delta" ? p.delta : p.temperature) = x;
        model::validate(p);
        points.push_back(p);
    }
    write_manifest(opt);
    const fs::path dir = opt.out / "points";
    ensure_directory(dir);

    auto point_file = [&](std::size_t i) {
        char name[32];
        std::snprintf(name, sizeof name, "point_%04zu.csv", i);
        return dir / name;
    };
    std::vector<timescales::Analysis> results(points.size());
    std::vector<std::exception_ptr> errors(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            try {
                results[i] = timescales::analyze(points[i]);
                CsvWriter csv(point_file(i), sweep_header());
                sweep_row(csv, results[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t n_threads = std::min<std::size_t>(opt.jobs > 0 ? opt.jobs : hw, points.size());
    std::vector<std::thread> pool;
    for (std::size_t k = 1; k < n_threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!errors[i]) continue;
        try {
            std::rethrow_exception(errors[i]);
        } catch (const ParameterError& e) {
            throw ParameterError(opt.axis + " = " + format_number(values[i]) + ": " + e.what());
        } catch (const NumericalError& e) {
            throw NumericalError(opt.axis + " = " + format_number(values[i]) + ": " + e.what(), e.diagnostic());
        }
    }

    CsvWriter merged(opt.out / "sweep.csv", sweep_header());
    for (const auto& a : results) sweep_row(merged, a);
    std::cout << "sweep over " << opt.axis << ": " << points.size() << " points on " << n_threads << " thread(s); wrote "
              << (opt.out / "sweep.csv").string() << " and " << dir.string() << "/\n";
    return kOk;
}

int run_validate(const RunOptions& opt) {
    write_manifest(opt);
    validation::BatteryOptions bo;
    bo.tolerance_scale = opt.tolerance_scale;
    bo.only = opt.only;
    bo.include_invariants = opt.invariants;
    bo.on_result = [](const validation::ItemResult& r) { std::cout << validation::format_line(r) << std::endl; };
    const auto report = validation::run_battery(bo);
    if (report.items.empty()) throw ParameterError("--only matched no validation items");
    write_json(opt.out / "validate_report.json", report.to_json());
    const std::string summary = report.summary();
    write_text(opt.out / "validate_summary.txt", summary);
    std::cout << summary.substr(summary.find_last_of('\n', summary.size() - 2) + 1);
    return report.all_passed() ? kOk : kValidationFailed;
}

} // namespace rcpt::app
