// figures.cpp — Presets fig2..fig8: CSV data plus an SVG rendering.

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>

#include "rcpt/app/commands.hpp"
#include "rcpt/app/io.hpp"
#include "rcpt/app/svg.hpp"
#include "rcpt/mapping.hpp"
#include "rcpt/timescales.hpp"

namespace rcpt::app {

namespace fs = std::filesystem;
using redfield::Method;

model::ModelParams figure_preset(int id) {
    if (id < 2 || id > 8) throw ParameterError("figure id must be in 2..8, got " + std::to_string(id));
    // All captions share these values; lambda and T vary inside each figure.
    model::ModelParams p;
    p.v = 1.0;
    p.delta = 0.01;
    p.omega = 10.0;
    p.gamma = 0.05;
    p.cutoff = 1000.0;
    p.temperature = 1.0;
    return p;
}

namespace {

const std::vector<double> kDeltas{0.01, 0.02, 0.03, 0.1, 0.5};
const std::vector<double> kTemperatures{0.5, 1.0, 2.0, 5.0};
const std::vector<double> kDynamicsLambdas{0.1, 1.0, 3.0, 5.0};
const char* const kColors[] = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd"};

std::vector<double> linspace(double a, double b, int n) { return Range{a, b, n}.values(); }

std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(std::pow(10.0, std::log10(a) + (std::log10(b) - std::log10(a)) * i / (n - 1)));
    return v;
}

std::string tag(double x) { return format_number(x); }

class Clock {
public:
    explicit Clock(double budget) : budget_(budget), t0_(std::chrono::steady_clock::now()) {}
    double elapsed() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }
    void check(const std::string& what) const {
        if (elapsed() > budget_)
            throw BudgetExceeded("wall-clock budget of " + format_number(budget_) + " s exceeded after " + what +
                                     "; partial output kept",
                                 elapsed());
    }

private:
    double budget_;
    std::chrono::steady_clock::time_point t0_;
};

timescales::Analysis analysis_at(model::ModelParams p, double lambda, double delta, double temperature) {
    p.lambda = lambda;
    p.delta = delta;
    p.temperature = temperature;
    return timescales::analyze(p);
}

void figure2(const RunOptions& opt) {
    CsvWriter csv(opt.out / "fig2.csv", {"lambda", "E0", "Eminus", "Eplus"});
    Series e0{"E0", {}, {}, "", false}, em{"E-", {}, {}, "", false}, ep{"E+", {}, {}, "", false};
    for (double l : linspace(0.0, 10.0, 201)) {
        auto p = opt.params;
        p.lambda = l;
        const auto s = mapping::diagonalize_effective(p);
        csv.row({l, s.e0, s.e_minus, s.e_plus});
        for (auto* sr : {&e0, &em, &ep}) sr->x.push_back(l);
        e0.y.push_back(s.e0);
        em.y.push_back(s.e_minus);
        ep.y.push_back(s.e_plus);
    }
    write_svg(opt.out / "fig2.svg", Plot{"effective eigenvalues", 1, {Panel{"", "lambda", "energy", false, false, {e0, em, ep}, {}}}});
}

void figure3(const RunOptions& opt) {
    CsvWriter by_lambda(opt.out / "fig3_lambda.csv", {"T", "delta", "lambda", "tau1", "tau2"});
    CsvWriter by_delta(opt.out / "fig3_delta.csv", {"T", "lambda", "delta", "tau1", "tau2"});
    std::vector<Panel> top, bottom;
    for (double t : kTemperatures) {
        Panel pl{"T = " + tag(t), "lambda", "tau", false, true, {}, {}};
        for (double d : kDeltas) {
            Series s1{"tau1 D=" + tag(d), {}, {}, "", true}, s2{"tau2 D=" + tag(d), {}, {}, "", false};
            for (double l : linspace(0.1, 10.0, 100)) {
                const auto a = analysis_at(opt.params, l, d, t);
                by_lambda.row({t, d, l, a.full.tau1, a.full.tau2_or_inf()});
                s1.x.push_back(l);
                s1.y.push_back(a.full.tau1);
                s2.x.push_back(l);
                s2.y.push_back(a.full.tau2_or_inf());
            }
            s1.color = s2.color = kColors[pl.series.size() / 2 % 5];
            pl.series.push_back(s1);
            pl.series.push_back(s2);
        }
        top.push_back(pl);
        Panel pd{"T = " + tag(t), "Delta", "tau", true, true, {}, {}};
        for (double l : {0.1, 1.0, 3.0, 5.0, 10.0}) {
            Series s1{"tau1 l=" + tag(l), {}, {}, "", true}, s2{"tau2 l=" + tag(l), {}, {}, "", false};
            for (double d : logspace(1e-3, 0.5, 60)) {
                const auto a = analysis_at(opt.params, l, d, t);
                by_delta.row({t, l, d, a.full.tau1, a.full.tau2_or_inf()});
                s1.x.push_back(d);
                s1.y.push_back(a.full.tau1);
                s2.x.push_back(d);
                s2.y.push_back(a.full.tau2_or_inf());
            }
            s1.color = s2.color = kColors[pd.series.size() / 2 % 5];
            pd.series.push_back(s1);
            pd.series.push_back(s2);
        }
        bottom.push_back(pd);
    }
    Plot plot{"relaxation timescales", 4, top};
    plot.panels.insert(plot.panels.end(), bottom.begin(), bottom.end());
    write_svg(opt.out / "fig3.svg", plot);
}

void figure4(const RunOptions& opt) {
    CsvWriter csv(opt.out / "fig4.csv", {"delta", "lambda", "p2", "q2", "E_plus0", "E_minus0"});
    Panel pq{"overlaps", "lambda", "p^2, q^2", false, true, {}, {}};
    Panel bohr{"Bohr frequencies", "lambda", "E - E0", false, false, {}, {}};
    for (double d : kDeltas) {
        const char* c = kColors[pq.series.size() / 2 % 5];
        Series p2{"p2 D=" + tag(d), {}, {}, c, false}, q2{"q2 D=" + tag(d), {}, {}, c, true};
        Series bp{"E+0 D=" + tag(d), {}, {}, c, false}, bm{"E-0 D=" + tag(d), {}, {}, c, true};
        for (double l : linspace(0.0, 10.0, 201)) {
            auto p = opt.params;
            p.lambda = l;
            p.delta = d;
            const auto s = mapping::diagonalize_effective(p);
            csv.row({d, l, s.p2(), s.q2(), s.bohr_plus(), s.bohr_minus()});
            for (auto* sr : {&p2, &q2, &bp, &bm}) sr->x.push_back(l);
            p2.y.push_back(s.p2());
            q2.y.push_back(s.q2());
            bp.y.push_back(s.bohr_plus());
            bm.y.push_back(s.bohr_minus());
        }
        pq.series.push_back(p2);
        pq.series.push_back(q2);
        bohr.series.push_back(bp);
        bohr.series.push_back(bm);
    }
    write_svg(opt.out / "fig4.svg", Plot{"mixing and Bohr frequencies", 2, {pq, bohr}});
}

void figure5(const RunOptions& opt) {
    CsvWriter csv(opt.out / "fig5.csv", {"limit", "T", "delta", "lambda", "tau1", "tau2", "tau1_limit", "tau2_limit"});
    std::vector<Panel> panels;
    for (const auto& [name, t] : std::vector<std::pair<std::string, double>>{{"low", 0.1}, {"high", 5.0}}) {
        Panel pn{name + " temperature (T = " + tag(t) + ")", "lambda", "tau", false, true, {}, {}};
        for (double d : kDeltas) {
            Series f1{"tau1 D=" + tag(d), {}, {}, "", false}, f2{"tau2 D=" + tag(d), {}, {}, "", false};
            Series a1{"", {}, {}, "", true}, a2{"", {}, {}, "", true};
            for (double l : linspace(0.1, 10.0, 100)) {
                const auto a = analysis_at(opt.params, l, d, t);
                const auto& lim = name == "low" ? a.low_t : a.high_t;
                csv.cell(name).cell(t).cell(d).cell(l).cell(a.full.tau1).cell(a.full.tau2_or_inf());
                csv.cell(lim.tau1).cell(lim.tau2_or_inf()).end_row();
                for (auto* sr : {&f1, &f2, &a1, &a2}) sr->x.push_back(l);
                f1.y.push_back(a.full.tau1);
                f2.y.push_back(a.full.tau2_or_inf());
                a1.y.push_back(lim.tau1);
                a2.y.push_back(lim.tau2_or_inf());
            }
            for (auto* sr : {&f1, &f2, &a1, &a2}) sr->color = kColors[pn.series.size() / 4 % 5];
            pn.series.insert(pn.series.end(), {f1, f2, a1, a2});
        }
        panels.push_back(pn);
    }
    write_svg(opt.out / "fig5.svg", Plot{"full expression (solid) vs limit formulas (dashed)", 2, panels});
}

struct MethodStyle {
    Method method;
    const char* color;
    bool dashed;
};

Series population_series(const std::string& label, const std::vector<redfield::ObservableRow>& rows, int which,
                         const char* color, bool dashed) {
    Series s{label, {}, {}, color, dashed};
    for (const auto& r : rows) {
        s.x.push_back(r.t);
        s.y.push_back(which == 0 ? r.rho11 : which == 1 ? r.rho22 : which == 2 ? r.rho33 : which == 3 ? r.re_rho32 : r.im_rho32);
    }
    return s;
}

void figure6(const RunOptions& opt, const Clock& clock) {
    const std::vector<MethodStyle> styles{{Method::UW, "#7f7f7f", false}, {Method::RC, "#d62728", true},
                                          {Method::EFFH, "#1f77b4", false}};
    std::vector<Panel> pops, cohs;
    for (double l : kDynamicsLambdas) {
        Panel pp{"lambda = " + tag(l), "t", "population", true, false, {}, {}};
        Panel pc{"lambda = " + tag(l), "t", "Re rho32", true, false, {}, {}};
        for (const auto& st : styles) {
            redfield::SimulationConfig cfg;
            cfg.method = st.method;
            cfg.rc_levels = opt.rc_levels;
            cfg.params = opt.params;
            cfg.params.lambda = l;
            cfg.grid = redfield::TimeGrid::log_spaced(opt.t_min, opt.t_max, opt.points);
            const auto sim = redfield::simulate(cfg);
            const std::string name = "fig6_" + redfield::to_string(st.method) + "_lambda" + tag(l) + ".csv";
            CsvWriter csv(opt.out / name, trajectory_header());
            for (const auto& r : sim.rows)
                csv.row({r.t, r.rho11, r.rho22, r.rho33, r.re_rho32, r.im_rho32, r.trace_error, r.min_eigenvalue});
            for (int k = 0; k < 3; ++k)
                pp.series.push_back(population_series(k == 0 ? redfield::to_string(st.method) : "", sim.rows, k, st.color, st.dashed));
            pc.series.push_back(population_series(redfield::to_string(st.method), sim.rows, 3, st.color, st.dashed));
            if (st.method == Method::RC) clock.check("RC run at lambda = " + tag(l));
        }
        pops.push_back(pp);
        cohs.push_back(pc);
    }
    Plot plot{"populations (top) and coherence (bottom), uniform initial state", 4, pops};
    plot.panels.insert(plot.panels.end(), cohs.begin(), cohs.end());
    write_svg(opt.out / "fig6.svg", plot);
}

void figure7(const RunOptions& opt, const Clock& clock) {
    CsvWriter csv(opt.out / "fig7.csv", steady_header());
    std::map<Method, std::vector<std::array<double, 5>>> data;
    const auto lambdas = linspace(0.5, 10.0, 20);
    for (double l : lambdas) {
        for (Method m : {Method::EFFH, Method::RC}) {
            auto p = opt.params;
            p.lambda = l;
            const auto ss = redfield::site_steady_state(m, p, opt.rc_levels);
            csv.cell(l).cell(redfield::to_string(m)).cell(ss.rho(0, 0).real()).cell(ss.rho(1, 1).real());
            csv.cell(ss.rho(2, 2).real()).cell(ss.rho(2, 1).real()).cell(ss.rho(2, 1).imag()).cell(ss.residual).end_row();
            data[m].push_back({l, ss.rho(0, 0).real(), ss.rho(1, 1).real(), ss.rho(2, 2).real(), ss.rho(2, 1).real()});
        }
        clock.check("RC steady state at lambda = " + tag(l));
    }
    Panel pops{"steady-state populations", "lambda", "population", false, false, {}, {}};
    Panel coh{"steady-state coherence", "lambda", "Re rho32", false, false, {}, {}};
    for (const auto& [m, rows] : data) {
        const char* color = m == Method::RC ? "#d62728" : "#1f77b4";
        const bool dashed = m == Method::RC;
        for (int k = 1; k <= 4; ++k) {
            Series s{k == 1 || k == 4 ? redfield::to_string(m) : "", {}, {}, color, dashed};
            for (const auto& r : rows) {
                s.x.push_back(r[0]);
                s.y.push_back(r[k]);
            }
            (k == 4 ? coh : pops).series.push_back(s);
        }
    }
    write_svg(opt.out / "fig7.svg", Plot{"RC vs EFFH steady states", 2, {pops, coh}});
}

void figure8(const RunOptions& opt) {
    CsvWriter markers(opt.out / "fig8_markers.csv", {"lambda", "tau1", "tau2"});
    std::vector<Panel> panels;
    for (double l : kDynamicsLambdas) {
        auto p = opt.params;
        p.lambda = l;
        const auto a = timescales::analyze(p);
        markers.row({l, a.full.tau1, a.full.tau2_or_inf()});
        Panel pn{"lambda = " + tag(l), "t", "population", true, false, {}, {{a.full.tau1, "tau1", "#555555"}}};
        if (a.full.tau2) pn.vlines.push_back({*a.full.tau2, "tau2", "#555555"});
        for (const auto& [init, color] : std::vector<std::pair<std::string, const char*>>{{"uniform", "#1f77b4"}, {"ground", "#d62728"}}) {
            redfield::SimulationConfig cfg;
            cfg.params = p;
            cfg.initial_state = parse_initial_state(init);
            cfg.grid = redfield::TimeGrid::log_spaced(opt.t_min, opt.t_max, opt.points);
            const auto sim = redfield::simulate(cfg);
            CsvWriter csv(opt.out / ("fig8_" + init + "_lambda" + tag(l) + ".csv"), trajectory_header());
            for (const auto& r : sim.rows)
                csv.row({r.t, r.rho11, r.rho22, r.rho33, r.re_rho32, r.im_rho32, r.trace_error, r.min_eigenvalue});
            for (int k = 0; k < 3; ++k) pn.series.push_back(population_series(k == 0 ? init : "", sim.rows, k, color, init == "ground"));
        }
        panels.push_back(pn);
    }
    write_svg(opt.out / "fig8.svg", Plot{"EFFH populations from two initial states with tau1/tau2 markers", 2, panels});
}

} // namespace

int run_figure(const RunOptions& opt) {
    figure_preset(opt.figure);
    if (opt.rc_levels < 1) throw ParameterError("--rc-levels must be >= 1");
    if (opt.points < 2) throw ParameterError("--points must be >= 2");
    if (!(opt.budget_s > 0.0)) throw ParameterError("--budget must be > 0");
    write_manifest(opt);
    const Clock clock(opt.budget_s);
    switch (opt.figure) {
    case 2: figure2(opt); break;
    case 3: figure3(opt); break;
    case 4: figure4(opt); break;
    case 5: figure5(opt); break;
    case 6: figure6(opt, clock); break;
    case 7: figure7(opt, clock); break;
    case 8: figure8(opt); break;
    }
    std::cout << "figure " << opt.figure << " written to " << opt.out.string() << " in " << clock.elapsed() << " s\n";
    return kOk;
}

} // namespace rcpt::app
