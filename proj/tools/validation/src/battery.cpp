// battery.cpp — Acceptance criteria and invariant checks.
//
// Expected values come from rcpt::oracle where a derived number is needed;
// stated targets are used exactly as given, even where the oracle disagrees.

#include "rcpt/validation/battery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include "rcpt/errors.hpp"
#include "rcpt/mapping.hpp"
#include "rcpt/redfield.hpp"
#include "rcpt/timescales.hpp"
#include "rcpt/validation/oracles.hpp"

namespace rcpt::validation {

namespace {

using json = nlohmann::json;
using model::ModelParams;
using redfield::Method;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x, int prec = 4) {
    std::ostringstream os;
    os << std::setprecision(prec) << x;
    return os.str();
}

ModelParams reference(double lambda, double delta = 0.01, double temperature = 1.0) {
    ModelParams p;
    p.lambda = lambda;
    p.delta = delta;
    p.temperature = temperature;
    return p;
}

// Random parameter point inside the regime where the analytic reduction holds.
ModelParams draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (true) {
        ModelParams p;
        p.v = 0.5 + 1.5 * u(rng);
        p.delta = p.v * (0.001 + 0.9 * u(rng));
        p.lambda = 0.05 + 9.95 * u(rng);
        p.omega = 5.0 + 25.0 * u(rng);
        p.gamma = 0.005 + 0.1 * u(rng);
        p.cutoff = 100.0 + 2000.0 * u(rng);
        p.temperature = 0.1 + 5.0 * u(rng);
        try {
            const auto spec = mapping::diagonalize_effective(p);
            timescales::golden_rates(spec, p);
            return p;
        } catch (const ParameterError&) {
        }
    }
}

struct Outcome {
    bool passed{false};
    std::string detail;
    json metrics = json::object();
};

// Per-run statistics of one trajectory, shared by several items.
struct RunStats {
    double max_trace{0.0};
    double max_herm{0.0};
    double min_eig{1.0};
    double runtime_s{0.0};
    std::vector<redfield::ObservableRow> rows;
};

class Battery {
public:
    explicit Battery(double scale) : scale_(scale) {}

    double tol(double t) const { return t * scale_; }

    const RunStats& run(Method m, double lambda, bool ground) {
        const auto key = std::make_tuple(static_cast<int>(m), lambda, ground);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        redfield::SimulationConfig cfg;
        cfg.method = m;
        cfg.params = reference(lambda);
        cfg.initial_state = ground ? redfield::ground_state() : redfield::uniform_state();
        const auto t0 = Clock::now();
        const auto sim = redfield::simulate(cfg);
        RunStats s;
        s.runtime_s = seconds_since(t0);
        const auto& tr = sim.trajectory;
        for (std::size_t k = 0; k < tr.times.size(); ++k) {
            s.max_trace = std::max(s.max_trace, tr.trace_error[k]);
            s.max_herm = std::max(s.max_herm, tr.hermiticity_error[k]);
            s.min_eig = std::min(s.min_eig, tr.min_eigenvalue[k]);
        }
        s.rows = sim.rows;
        return cache_.emplace(key, std::move(s)).first->second;
    }

    Outcome ac1();
    Outcome ac2();
    Outcome ac3();
    Outcome ac4();
    Outcome ac5();
    Outcome ac6();
    Outcome ac7();
    Outcome ac8();
    Outcome ac9();
    Outcome ac10();
    Outcome ac11();
    Outcome ac12();
    Outcome ac13();
    Outcome ac14();
    Outcome inv_generator();
    Outcome inv_embedding();
    Outcome inv_two_level();
    Outcome inv_redfield_secular();
    Outcome inv_detailed_balance();
    Outcome inv_spectrum();
    Outcome inv_positivity();
    Outcome inv_degenerate();
    Outcome inv_interior_minimum();
    Outcome inv_weak_agreement();

private:
    double scale_;
    std::map<std::tuple<int, double, bool>, RunStats> cache_;
};

// ---------------------------------------------------------------- AC1..AC14

Outcome Battery::ac1() {
    std::mt19937_64 rng(20240601);
    double worst = 0.0;
    int failures = 0;
    const int n = 10000;
    for (int k = 0; k < n; ++k) {
        const ModelParams p = draw(rng);
        try {
            const auto spec = mapping::diagonalize_effective(p);
            const auto r = timescales::golden_rates(spec, p);
            const auto rm = timescales::rate_matrix(r, spec);
            const auto t = timescales::relaxation_timescales(rm, r, spec);
            oracle::Spectrum os;
            os.energies << spec.e0, spec.e_minus, spec.e_plus;
            os.p2 = spec.p2();
            os.q2 = spec.q2();
            const auto [t1, t2] = oracle::timescales(os, {r.gamma_up_plus, r.gamma_up_minus, r.gamma_down_plus,
                                                          r.gamma_down_minus});
            worst = std::max({worst, std::abs(t.tau1 / t1 - 1.0), std::abs(t.tau2_or_inf() / t2 - 1.0)});
        } catch (const NumericalError&) {
            ++failures;
        }
    }
    Outcome o;
    o.passed = failures == 0 && worst < tol(1e-10);
    o.metrics = {{"draws", n}, {"max_rel_error", worst}, {"numerical_failures", failures}, {"tolerance", tol(1e-10)}};
    o.detail = "max rel err " + fmt(worst, 3) + " over " + std::to_string(n) + " draws (tol " + fmt(tol(1e-10)) + ")";
    return o;
}

Outcome Battery::ac2() {
    const ModelParams p = reference(0.0);
    const auto h = mapping::effective_hamiltonian(p).entries();
    const auto h0 = model::bare_hamiltonian(p).entries();
    const double err = (h - h0).cwiseAbs().maxCoeff();
    const double t = tol(4.0 * std::numeric_limits<double>::epsilon() * p.v);
    Outcome o;
    o.passed = err <= t;
    o.metrics = {{"max_abs_error", err}, {"tolerance", t}};
    o.detail = "||H_eff(0) - H_S||_max = " + fmt(err, 3) + " (tol " + fmt(t, 3) + ")";
    return o;
}

Outcome Battery::ac3() {
    const HermitianMatrix s = model::coupling_operator();
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> th(-5.0, 5.0);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double theta = th(rng);
        const MatrixXcd ref = oracle::expm(cplx(0.0, theta) * s.entries());
        worst = std::max(worst, (mapping::su3_exponential(s, theta) - ref).cwiseAbs().maxCoeff());
    }
    Outcome o;
    o.passed = worst < tol(1e-10);
    o.metrics = {{"max_abs_error", worst}, {"samples", 100}, {"tolerance", tol(1e-10)}};
    o.detail = "max elementwise error " + fmt(worst, 3) + " over 100 theta";
    return o;
}

Outcome Battery::ac4() {
    const int n = 80;
    MatrixXcd a = MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    double worst = 0.0;
    json per = json::object();
    for (double alpha : {0.25, 0.5, 1.0, 2.0}) {
        const double ref = oracle::expm(alpha * (a.adjoint() - a))(0, 0).real();
        const double err = std::abs(mapping::vacuum_displacement_moment(alpha) - ref);
        per[fmt(alpha)] = err;
        worst = std::max(worst, err);
    }
    Outcome o;
    o.passed = worst < tol(1e-8);
    o.metrics = {{"fock_levels", n}, {"errors", per}, {"max_error", worst}, {"tolerance", tol(1e-8)}};
    o.detail = "max error " + fmt(worst, 3) + " with " + std::to_string(n) + " Fock levels";
    return o;
}

Outcome Battery::ac5() {
    std::mt19937_64 rng(55);
    double worst = 0.0;
    const int n = 1000;
    int failures = 0;
    for (int k = 0; k < n; ++k) {
        const ModelParams p = draw(rng);
        const auto spec = mapping::diagonalize_effective(p);
        const auto g = redfield::build_secular_lindblad_generator(spec, timescales::golden_rates(spec, p));
        try {
            const auto ss = redfield::steady_state(g);
            const Eigen::VectorXd w = oracle::gibbs(Eigen::Vector3d(spec.e0, spec.e_minus, spec.e_plus), p.temperature);
            for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(ss.rho(i, i).real() / w(i) - 1.0));
        } catch (const NumericalError&) {
            ++failures;
        }
    }
    Outcome o;
    o.passed = failures == 0 && worst < tol(1e-8);
    o.metrics = {{"draws", n}, {"max_rel_error", worst}, {"failures", failures}, {"tolerance", tol(1e-8)}};
    o.detail = "max rel deviation from Boltzmann " + fmt(worst, 3) + " over " + std::to_string(n) + " draws";
    return o;
}

Outcome Battery::ac6() {
    const ModelParams p = reference(5.0);
    const auto a = timescales::analyze(p);
    const double tau1 = a.full.tau1, tau2 = a.full.tau2_or_inf();
    const auto os = oracle::closed_form_labels(oracle::spectrum_of(oracle::polaron_vacuum_hamiltonian(p, 60)));
    const auto [o1, o2] = oracle::timescales(os, oracle::golden_rates(os, p, true));
    const bool ok1 = std::abs(tau1 / 0.896 - 1.0) < tol(0.02);
    const bool ok2 = std::abs(tau2 / 1.2e6 - 1.0) < tol(0.10);
    const bool ok3 = tau2 / tau1 > 1e5;
    const double agree = std::max(std::abs(tau1 / o1 - 1.0), std::abs(tau2 / o2 - 1.0));
    const bool ok4 = agree < tol(1e-8);
    Outcome o;
    o.passed = ok1 && ok2 && ok3 && ok4;
    o.metrics = {{"tau1", tau1}, {"tau2", tau2}, {"ratio", tau2 / tau1}, {"oracle_tau1", o1}, {"oracle_tau2", o2},
                 {"target_tau1", 0.896}, {"target_tau2", 1.2e6}, {"tau1_ok", ok1}, {"tau2_ok", ok2},
                 {"ratio_ok", ok3}, {"oracle_agreement", agree}};
    o.detail = "tau1=" + fmt(tau1) + (ok1 ? " ok" : " OFF") + " (0.896+-2%), tau2=" + fmt(tau2) +
               (ok2 ? " ok" : " OFF") + " (1.2e6+-10%; oracle " + fmt(o2) + "), tau2/tau1=" + fmt(tau2 / tau1, 3);
    return o;
}

Outcome Battery::ac7() {
    const std::vector<double> temps{0.5, 1.0, 2.0, 5.0}, deltas{0.01, 0.1, 0.5};
    std::vector<double> lambdas;
    for (int k = 0; k <= 190; ++k) lambdas.push_back(0.5 + 0.05 * k);
    bool interior = true, monotone = true;
    double worst_spread = 0.0, worst_lambda = 0.0, worst_t = 0.0;
    json minima = json::array();
    for (double t : temps) {
        std::vector<std::vector<double>> tau1(deltas.size());
        for (std::size_t d = 0; d < deltas.size(); ++d) {
            std::vector<double> tau2;
            for (double l : lambdas) {
                const auto a = timescales::analyze(reference(l, deltas[d], t));
                tau1[d].push_back(a.full.tau1);
                tau2.push_back(a.full.tau2_or_inf());
            }
            const auto it = std::min_element(tau2.begin(), tau2.end());
            const bool in = it != tau2.begin() && it != tau2.end() - 1;
            interior = interior && in;
            minima.push_back({{"T", t}, {"delta", deltas[d]}, {"argmin_lambda", lambdas[it - tau2.begin()]}, {"interior", in}});
            for (std::size_t k = 1; k < tau1[d].size(); ++k) monotone = monotone && tau1[d][k] <= tau1[d][k - 1] * (1 + 1e-12);
        }
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
            if (lambdas[k] < 2.0 - 1e-12) continue;
            double lo = 1e300, hi = 0.0;
            for (std::size_t d = 0; d < deltas.size(); ++d) {
                lo = std::min(lo, tau1[d][k]);
                hi = std::max(hi, tau1[d][k]);
            }
            const double spread = (hi - lo) / lo;
            if (spread > worst_spread) {
                worst_spread = spread;
                worst_lambda = lambdas[k];
                worst_t = t;
            }
        }
    }
    const bool spread_ok = worst_spread < tol(0.05);
    Outcome o;
    o.passed = interior && monotone && spread_ok;
    o.metrics = {{"tau2_interior_minimum", interior}, {"tau1_monotone", monotone}, {"minima", minima},
                 {"max_tau1_spread_over_delta", worst_spread}, {"worst_lambda", worst_lambda}, {"worst_T", worst_t},
                 {"spread_tolerance", tol(0.05)}};
    o.detail = std::string("interior min ") + (interior ? "yes" : "NO") + ", tau1 monotone " + (monotone ? "yes" : "NO") +
               ", max tau1 spread over Delta at lambda>=2: " + fmt(100 * worst_spread, 3) + "% (lambda=" +
               fmt(worst_lambda) + ", T=" + fmt(worst_t) + "; tol " + fmt(100 * tol(0.05)) + "%)";
    return o;
}

Outcome Battery::ac8() {
    double worst_low = 0.0, worst_high = 0.0;
    for (double l = 1.0; l <= 5.0 + 1e-9; l += 0.25) {
        const auto lo = timescales::analyze(reference(l, 0.01, 0.1));
        worst_low = std::max({worst_low, std::abs(lo.low_t.tau1 / lo.full.tau1 - 1.0),
                              std::abs(lo.low_t.tau2_or_inf() / lo.full.tau2_or_inf() - 1.0)});
        const auto hi = timescales::analyze(reference(l, 0.01, 5.0));
        worst_high = std::max({worst_high, std::abs(hi.high_t.tau1 / hi.full.tau1 - 1.0),
                               std::abs(hi.high_t.tau2_or_inf() / hi.full.tau2_or_inf() - 1.0)});
    }
    Outcome o;
    o.passed = worst_low < tol(0.10) && worst_high < tol(0.15);
    o.metrics = {{"low_T_max_rel_error", worst_low}, {"high_T_max_rel_error", worst_high},
                 {"low_T_tolerance", tol(0.10)}, {"high_T_tolerance", tol(0.15)}};
    o.detail = "low-T worst " + fmt(100 * worst_low, 3) + "% (tol 10%), high-T worst " + fmt(100 * worst_high, 3) + "% (tol 15%)";
    return o;
}

Outcome Battery::ac9() {
    const auto rep = timescales::scaling_diagnostics(reference(8.0, 0.01, 5.0), {6, 7, 8, 9, 10});
    const bool s_ok = std::abs(rep.tau2_exp_slope / 0.01 - 1.0) < tol(0.20);
    const bool r_ok = std::abs(rep.delta_doubling_ratio / 0.25 - 1.0) < tol(0.10);
    const bool e_ok = std::abs(rep.tau1_power / -2.0 - 1.0) < tol(0.15);
    Outcome o;
    o.passed = s_ok && r_ok && e_ok;
    o.metrics = {{"tau2_slope", rep.tau2_exp_slope}, {"tau2_slope_prefactor_removed", rep.tau2_exp_slope_prefactor_removed},
                 {"delta_ratio", rep.delta_doubling_ratio}, {"tau1_exponent", rep.tau1_power},
                 {"slope_ok", s_ok}, {"ratio_ok", r_ok}, {"exponent_ok", e_ok}};
    o.detail = "slope " + fmt(rep.tau2_exp_slope) + (s_ok ? " ok" : " OFF") + " (0.01+-20%), ratio " +
               fmt(rep.delta_doubling_ratio) + (r_ok ? " ok" : " OFF") + " (0.25+-10%), exponent " + fmt(rep.tau1_power) +
               (e_ok ? " ok" : " OFF") + " (-2+-15%)";
    return o;
}

Outcome Battery::ac10() {
    double worst_trace = 0.0, worst_herm = 0.0, worst_secular_eig = 1.0;
    double max_rt_fast = 0.0, max_rt_rc = 0.0;
    json runs = json::array();
    for (double l : {0.1, 1.0, 3.0, 5.0}) {
        for (bool ground : {false, true}) {
            for (Method m : {Method::UW, Method::EFFH, Method::RC}) {
                const auto& s = run(m, l, ground);
                worst_trace = std::max(worst_trace, s.max_trace);
                worst_herm = std::max(worst_herm, s.max_herm);
                (m == Method::RC ? max_rt_rc : max_rt_fast) = std::max(m == Method::RC ? max_rt_rc : max_rt_fast, s.runtime_s);
                runs.push_back({{"method", redfield::to_string(m)}, {"lambda", l}, {"init", ground ? "ground" : "uniform"},
                                {"max_trace_err", s.max_trace}, {"max_herm_err", s.max_herm}, {"min_eig", s.min_eig},
                                {"runtime_s", s.runtime_s}});
            }
            const ModelParams p = reference(l);
            const auto spec = mapping::diagonalize_effective(p);
            const auto g = redfield::build_secular_lindblad_generator(spec, timescales::golden_rates(spec, p));
            const MatrixXcd p3 = spec.basis.cast<cplx>();
            const MatrixXcd init = ground ? redfield::ground_state() : redfield::uniform_state();
            const auto tr = redfield::propagate(g, p3.transpose() * init * p3,
                                                redfield::TimeGrid::log_spaced(1e-2, 1e7, 400).times);
            for (std::size_t k = 0; k < tr.times.size(); ++k) {
                worst_trace = std::max(worst_trace, tr.trace_error[k]);
                worst_herm = std::max(worst_herm, tr.hermiticity_error[k]);
                worst_secular_eig = std::min(worst_secular_eig, tr.min_eigenvalue[k]);
            }
        }
    }
    const bool budget = max_rt_fast < 5.0 && max_rt_rc < 120.0;
    Outcome o;
    o.passed = worst_trace < tol(1e-8) && worst_herm < tol(1e-8) && worst_secular_eig >= -tol(1e-9) && budget;
    o.metrics = {{"max_trace_err", worst_trace}, {"max_herm_err", worst_herm}, {"secular_min_eig", worst_secular_eig},
                 {"max_runtime_uw_effh_s", max_rt_fast}, {"max_runtime_rc_s", max_rt_rc}, {"runs", runs}};
    o.detail = "trace err " + fmt(worst_trace, 3) + ", herm err " + fmt(worst_herm, 3) + ", secular min eig " +
               fmt(worst_secular_eig, 3) + ", slowest UW/EFFH " + fmt(max_rt_fast, 3) + " s, slowest RC " + fmt(max_rt_rc, 3) + " s";
    return o;
}

Outcome Battery::ac11() {
    const ModelParams p = reference(5.0);
    const auto a = timescales::analyze(p);
    const double t_lo = 10.0 * a.full.tau1, t_hi = 0.1 * a.full.tau2_or_inf();
    redfield::SimulationConfig cfg;
    cfg.params = p;
    cfg.grid = redfield::TimeGrid::log_spaced(t_lo, t_hi, 100);
    const auto sim = redfield::simulate(cfg);
    double drift = 0.0;
    for (auto get : {+[](const redfield::ObservableRow& r) { return r.rho11; },
                     +[](const redfield::ObservableRow& r) { return r.rho22; },
                     +[](const redfield::ObservableRow& r) { return r.rho33; }}) {
        double lo = 1e300, hi = -1e300;
        for (const auto& r : sim.rows) {
            lo = std::min(lo, get(r));
            hi = std::max(hi, get(r));
        }
        drift = std::max(drift, hi - lo);
    }
    const auto ss = redfield::site_steady_state(Method::EFFH, p);
    const double coh = std::abs(ss.rho(2, 1));

    // Oracle: null vector of the element-wise generator, mapped to the site basis.
    const auto& spec = a.spectrum;
    MatrixXcd s_eig = MatrixXcd::Zero(3, 3);
    s_eig(0, 1) = s_eig(1, 0) = spec.p;
    s_eig(0, 2) = s_eig(2, 0) = spec.q;
    auto j = [&](double w) { return oracle::effective_ohmic_j(p, w); };
    const MatrixXcd g = oracle::redfield_elementwise(Eigen::Vector3d(spec.e0, spec.e_minus, spec.e_plus), s_eig,
                                                     [&](double w) { return oracle::half_fourier(j, p.temperature, w); });
    Eigen::JacobiSVD<MatrixXcd> svd(g, Eigen::ComputeFullV);
    const VectorXcd null = svd.matrixV().col(8);
    MatrixXcd rho = unvec(null, 3);
    rho /= rho.trace();
    const MatrixXcd pm = spec.basis.cast<cplx>();
    const MatrixXcd site = pm * rho * pm.transpose();
    const double oracle_coh = std::abs(site(2, 1));
    const double agree = (site - MatrixXcd(ss.rho)).cwiseAbs().maxCoeff();

    Outcome o;
    o.passed = drift < tol(0.02) && coh > 0.05 && oracle_coh > 0.05 && agree < tol(1e-8);
    o.metrics = {{"t_from", t_lo}, {"t_to", t_hi}, {"max_population_drift", drift}, {"steady_abs_rho32", coh},
                 {"oracle_abs_rho32", oracle_coh}, {"oracle_max_entry_diff", agree}, {"steady_residual", ss.residual}};
    o.detail = "plateau drift " + fmt(drift, 3) + " over [" + fmt(t_lo, 3) + ", " + fmt(t_hi, 3) + "], steady |rho32| = " +
               fmt(coh, 4) + " (oracle " + fmt(oracle_coh, 4) + ", diff " + fmt(agree, 2) + ")";
    return o;
}

Outcome Battery::ac12() {
    json gaps = json::array();
    std::vector<double> g;
    for (double l = 3.0; l <= 10.0 + 1e-9; l += 1.0) {
        const auto rc = redfield::site_steady_state(Method::RC, reference(l), 10);
        const auto ef = redfield::site_steady_state(Method::EFFH, reference(l));
        double gap = 0.0;
        for (int i = 0; i < 3; ++i) gap = std::max(gap, std::abs(rc.rho(i, i).real() - ef.rho(i, i).real()));
        g.push_back(gap);
        gaps.push_back({{"lambda", l}, {"max_population_gap", gap},
                        {"rc", {rc.rho(0, 0).real(), rc.rho(1, 1).real(), rc.rho(2, 2).real(), rc.rho(2, 1).real()}},
                        {"effh", {ef.rho(0, 0).real(), ef.rho(1, 1).real(), ef.rho(2, 2).real(), ef.rho(2, 1).real()}}});
    }
    bool monotone = true;
    for (std::size_t k = 1; k < g.size(); ++k) monotone = monotone && g[k] <= g[k - 1];
    Outcome o;
    o.passed = g.back() < tol(0.02) && monotone;
    o.metrics = {{"gaps", gaps}, {"gap_at_10", g.back()}, {"monotone", monotone}};
    std::string seq;
    for (double x : g) seq += (seq.empty() ? "" : " ") + fmt(x, 2);
    o.detail = "gap at lambda=10: " + fmt(g.back(), 3) + " (tol 0.02); gaps lambda=3..10: " + seq + (monotone ? " (monotone)" : " (NOT monotone)");
    return o;
}

namespace {

// Time where d crosses `level` from above, log-interpolated. The slow edge
// uses the last such crossing since the fast transient can pass close to the
// final state on its way to the plateau.
double crossing(const std::vector<double>& t, const std::vector<double>& d, double level, bool last = false) {
    for (std::size_t i = 1; i < d.size(); ++i) {
        const std::size_t k = last ? d.size() - i : i;
        if (d[k] <= level && d[k - 1] > level) {
            const double f = (std::log(d[k - 1]) - std::log(level)) / (std::log(d[k - 1]) - std::log(d[k]));
            return std::exp(std::log(t[k - 1]) + f * (std::log(t[k]) - std::log(t[k - 1])));
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

Outcome Battery::ac13() {
    double worst_diff = 0.0, worst_edge = 0.0;
    json per = json::array();
    for (double l : {0.1, 1.0, 3.0, 5.0}) {
        const ModelParams p = reference(l);
        const auto a = timescales::analyze(p);
        const double tau1 = a.full.tau1, tau2 = a.full.tau2_or_inf();
        redfield::SimulationConfig cfg;
        cfg.params = p;
        const auto sys = redfield::build_system(cfg);
        const auto g = redfield::build_redfield_generator(sys, p.temperature);

        const double t_end = 1e3 * tau2;
        const auto tu = redfield::propagate(g, sys.embed(redfield::uniform_state(), 1.0), {t_end});
        const auto tg = redfield::propagate(g, sys.embed(redfield::ground_state(), 1.0), {t_end});
        const double diff = (sys.to_site(tu.states[0]) - sys.to_site(tg.states[0])).cwiseAbs().maxCoeff();
        worst_diff = std::max(worst_diff, diff);

        // Plateau edges from the uniform start: the fast edge is where the
        // distance to the plateau state (at sqrt(tau1 tau2)) falls to 1/e of its
        // initial value, the slow edge where the distance to the final state
        // falls to 1/e of its plateau value.
        const double t_mid = std::sqrt(tau1 * tau2);
        const auto grid = redfield::TimeGrid::log_spaced(1e-3 * tau1, 1e2 * tau2, 2000).times;
        std::vector<double> times = grid;
        const auto traj = redfield::propagate(g, sys.embed(redfield::uniform_state(), 1.0), times);
        const auto mid = sys.to_site(redfield::propagate(g, sys.embed(redfield::uniform_state(), 1.0), {t_mid}).states[0]);
        const auto fin = sys.to_site(redfield::steady_state(g).rho);
        auto dist = [](const Eigen::Matrix3cd& x, const Eigen::Matrix3cd& y) { return (x - y).diagonal().cwiseAbs().sum(); };
        std::vector<double> d_fast, d_slow;
        for (const auto& s : traj.states) {
            const auto site = sys.to_site(s);
            d_fast.push_back(dist(site, mid));
            d_slow.push_back(dist(site, fin));
        }
        const double d0 = dist(redfield::uniform_state(), mid);
        const double t_fast = crossing(grid, d_fast, d0 / std::exp(1.0));
        const double t_slow = crossing(grid, d_slow, dist(mid, fin) / std::exp(1.0), true);
        const double e_fast = std::abs(std::log(t_fast / tau1));
        const double e_slow = std::abs(std::log(t_slow / tau2));
        const double edge = std::isnan(e_fast) || std::isnan(e_slow) ? std::numeric_limits<double>::infinity()
                                                                       : std::max(e_fast, e_slow);
        worst_edge = std::max(worst_edge, edge);
        per.push_back({{"lambda", l}, {"tau1", tau1}, {"tau2", tau2}, {"entry_diff_at_1e3_tau2", diff},
                       {"fast_edge", t_fast}, {"slow_edge", t_slow}, {"fast_edge_over_tau1", t_fast / tau1},
                       {"slow_edge_over_tau2", t_slow / tau2}});
    }
    const double edge_tol = tol(std::log(3.0));
    Outcome o;
    o.passed = worst_diff < tol(1e-6) && worst_edge < edge_tol;
    o.metrics = {{"points", per}, {"max_entry_diff", worst_diff}, {"max_edge_log_ratio", worst_edge},
                 {"edge_tolerance_log", edge_tol}};
    o.detail = "max entry diff at 1e3 tau2: " + fmt(worst_diff, 3) + ", worst edge/marker factor " + fmt(std::exp(worst_edge), 3) + " (tol 3)";
    return o;
}

Outcome Battery::ac14() {
    const auto a = redfield::site_steady_state(Method::RC, reference(5.0), 10);
    const auto b = redfield::site_steady_state(Method::RC, reference(5.0), 14);
    double change = 0.0;
    for (int i = 0; i < 3; ++i) change = std::max(change, std::abs(a.rho(i, i).real() - b.rho(i, i).real()));
    Outcome o;
    o.passed = change < tol(1e-3);
    o.metrics = {{"max_population_change", change}, {"n10", {a.rho(0, 0).real(), a.rho(1, 1).real(), a.rho(2, 2).real()}},
                 {"n14", {b.rho(0, 0).real(), b.rho(1, 1).real(), b.rho(2, 2).real()}}, {"tolerance", tol(1e-3)}};
    o.detail = "max population change 10 -> 14 levels: " + fmt(change, 3);
    return o;
}

// ---------------------------------------------------------------- invariants

Outcome Battery::inv_generator() {
    double tr = 0.0, he = 0.0, re = -1e300;
    for (double l : {0.1, 1.0, 5.0})
        for (Method m : {Method::UW, Method::EFFH, Method::RC}) {
            redfield::SimulationConfig cfg;
            cfg.method = m;
            cfg.params = reference(l);
            const auto c = redfield::check_generator(redfield::build_redfield_generator(redfield::build_system(cfg), 1.0));
            tr = std::max(tr, c.trace_error);
            he = std::max(he, c.hermiticity_error);
            re = std::max(re, c.max_real_eigenvalue);
        }
    Outcome o;
    o.passed = tr < tol(1e-10) && he < tol(1e-10) && re < tol(1e-9);
    o.metrics = {{"trace_error", tr}, {"hermiticity_error", he}, {"max_real_eigenvalue", re}};
    o.detail = "|Tr G rho| " + fmt(tr, 3) + ", herm " + fmt(he, 3) + ", max Re eig " + fmt(re, 3);
    return o;
}

Outcome Battery::inv_embedding() {
    double worst = 0.0;
    bool simple = true;
    for (double l : {0.3, 1.0, 3.0, 5.0, 8.0}) {
        const ModelParams p = reference(l);
        const auto spec = mapping::diagonalize_effective(p);
        const auto r = timescales::golden_rates(spec, p);
        const auto g = redfield::build_secular_lindblad_generator(spec, r);
        Eigen::ComplexEigenSolver<MatrixXcd> es(g.matrix, false);
        int zeros = 0;
        for (const auto& x : es.eigenvalues()) zeros += std::abs(x) < 1e-10;
        simple = simple && zeros == 1;
        const Eigen::Vector2d rev = timescales::rate_matrix_eigenvalues(timescales::rate_matrix(r, spec));
        for (int k = 0; k < 2; ++k) {
            double best = 1e300;
            for (const auto& x : es.eigenvalues()) best = std::min(best, std::abs(x - cplx(rev(k))));
            worst = std::max(worst, best);
        }
    }
    Outcome o;
    o.passed = simple && worst < tol(1e-9);
    o.metrics = {{"max_eigenvalue_distance", worst}, {"simple_zero", simple}};
    o.detail = "rate eigenvalues found in 9x9 spectrum to " + fmt(worst, 3) + (simple ? ", simple zero" : ", zero NOT simple");
    return o;
}

Outcome Battery::inv_two_level() {
    const double eps = 0.7, t = 0.9;
    MatrixXcd hq = MatrixXcd::Zero(2, 2);
    hq(1, 1) = eps;
    MatrixXcd sx = MatrixXcd::Zero(2, 2);
    sx(0, 1) = sx(1, 0) = 1.0;
    ModelParams p;
    const auto g = redfield::build_redfield_generator(HermitianMatrix(hq), HermitianMatrix(sx),
                                                      model::SpectralDensity::ohmic(p), t);
    auto j = [&](double w) { return oracle::ohmic_j(p, w); };
    const double expected = 2.0 * (oracle::half_fourier(j, t, eps) + oracle::half_fourier(j, t, -eps));
    Eigen::Matrix2cd pop;
    pop << g.matrix(0, 0), g.matrix(0, 3), g.matrix(3, 0), g.matrix(3, 3);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(pop);
    const double relax = -std::min(es.eigenvalues()(0).real(), es.eigenvalues()(1).real());
    const double err = std::abs(relax - expected);
    Outcome o;
    o.passed = err < tol(1e-10);
    o.metrics = {{"relaxation_rate", relax}, {"oracle", expected}, {"abs_error", err}};
    o.detail = "qubit relaxation " + fmt(relax, 10) + " vs oracle " + fmt(expected, 10);
    return o;
}

Outcome Battery::inv_redfield_secular() {
    const ModelParams p = reference(5.0);
    redfield::SimulationConfig cfg;
    cfg.params = p;
    const auto gr = redfield::build_redfield_generator(redfield::build_system(cfg), 1.0);
    const auto spec = mapping::diagonalize_effective(p);
    const auto gs = redfield::build_secular_lindblad_generator(spec, timescales::golden_rates(spec, p));
    const auto grid = redfield::TimeGrid::log_spaced(1e-2, 1e7, 400).times;
    double worst = 0.0;
    const MatrixXcd pm = spec.basis.cast<cplx>();
    for (const MatrixXcd init : {MatrixXcd(redfield::uniform_state()), MatrixXcd(redfield::ground_state())}) {
        const MatrixXcd rho0 = pm.transpose() * init * pm;
        const auto a = redfield::observables(redfield::propagate(gr, rho0, grid), spec.basis);
        const auto b = redfield::observables(redfield::propagate(gs, rho0, grid), spec.basis);
        for (std::size_t k = 0; k < grid.size(); ++k)
            worst = std::max({worst, std::abs(a[k].rho11 - b[k].rho11), std::abs(a[k].rho22 - b[k].rho22),
                              std::abs(a[k].rho33 - b[k].rho33)});
    }
    Outcome o;
    o.passed = worst < tol(0.01);
    o.metrics = {{"max_population_difference", worst}};
    o.detail = "Redfield vs secular EFFH at lambda=5: max population difference " + fmt(worst, 3);
    return o;
}

Outcome Battery::inv_detailed_balance() {
    double worst_db = 0.0, worst_gibbs = 0.0;
    std::mt19937_64 rng(77);
    for (int k = 0; k < 500; ++k) {
        const ModelParams p = draw(rng);
        const auto spec = mapping::diagonalize_effective(p);
        const auto r = timescales::golden_rates(spec, p);
        worst_db = std::max({worst_db,
                             std::abs(r.gamma_down_plus / r.gamma_up_plus / std::exp(r.e_plus_0 / p.temperature) - 1.0),
                             std::abs(r.gamma_down_minus / r.gamma_up_minus / std::exp(r.e_minus_0 / p.temperature) - 1.0)});
        const Eigen::Vector2d ss = timescales::rate_matrix(r, spec).steady_state();
        const Eigen::VectorXd w = oracle::gibbs(Eigen::Vector3d(spec.e0, spec.e_minus, spec.e_plus), p.temperature);
        worst_gibbs = std::max({worst_gibbs, std::abs(ss(0) / w(1) - 1.0), std::abs(ss(1) / w(2) - 1.0)});
    }
    Outcome o;
    o.passed = worst_db < tol(1e-10) && worst_gibbs < tol(1e-8);
    o.metrics = {{"detailed_balance_rel_error", worst_db}, {"gibbs_rel_error", worst_gibbs}};
    o.detail = "detailed balance " + fmt(worst_db, 3) + ", -m^-1 d vs Boltzmann " + fmt(worst_gibbs, 3);
    return o;
}

Outcome Battery::inv_spectrum() {
    double pq = 0.0, orth = 0.0, coupling = 0.0, energies = 0.0, proj = 0.0;
    for (double l : {0.0, 0.5, 1.0, 3.0, 5.0, 10.0}) {
        const ModelParams p = reference(l);
        const auto s = mapping::diagonalize_effective(p);
        pq = std::max(pq, std::abs(s.p2() + s.q2() - 1.0));
        orth = std::max(orth, (s.basis.transpose() * s.basis - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
        const Eigen::Matrix3d sp = s.basis.transpose() * model::coupling_operator().entries().real() * s.basis;
        coupling = std::max(coupling, (sp - s.coupling().entries().real()).cwiseAbs().maxCoeff());
        const auto ref = oracle::spectrum_of(mapping::effective_hamiltonian(p).entries().real());
        energies = std::max({energies, std::abs(ref.energies(0) - s.e0), std::abs(ref.energies(1) - s.e_minus),
                             std::abs(ref.energies(2) - s.e_plus)});
        proj = std::max(proj, (oracle::polaron_vacuum_hamiltonian(p, 60) - mapping::effective_hamiltonian(p).entries().real())
                                  .cwiseAbs().maxCoeff());
    }
    Outcome o;
    o.passed = pq < tol(1e-14) && orth < tol(1e-12) && coupling < tol(1e-12) && energies < tol(1e-12) && proj < tol(1e-10);
    o.metrics = {{"p2_plus_q2_error", pq}, {"orthogonality_error", orth}, {"transformed_coupling_error", coupling},
                 {"energy_error", energies}, {"vacuum_projection_error", proj}};
    o.detail = "p^2+q^2-1 " + fmt(pq, 2) + ", P^T S P " + fmt(coupling, 2) + ", energies " + fmt(energies, 2) +
               ", vacuum projection " + fmt(proj, 2);
    return o;
}

Outcome Battery::inv_positivity() {
    json per = json::object();
    double worst_weak = 0.0, worst_rc = 0.0;
    for (double l : {0.1, 1.0, 3.0, 5.0})
        for (bool ground : {false, true})
            for (Method m : {Method::UW, Method::EFFH, Method::RC}) {
                const double neg = std::max(0.0, -run(m, l, ground).min_eig);
                (m == Method::RC ? worst_rc : worst_weak) = std::max(m == Method::RC ? worst_rc : worst_weak, neg);
            }
    Outcome o;
    o.passed = std::max(worst_weak, worst_rc) < tol(1e-3);
    o.metrics = {{"max_negativity_uw_effh", worst_weak}, {"max_negativity_rc", worst_rc}};
    o.detail = "Redfield transient negativity: UW/EFFH " + fmt(worst_weak, 3) + ", RC " + fmt(worst_rc, 3) + " (expected < 1e-3)";
    return o;
}

Outcome Battery::inv_degenerate() {
    const auto a = timescales::analyze(reference(0.05, 1e-4));
    const double ratio = a.full.tau2_or_inf() / a.full.tau1;
    Outcome o;
    o.passed = ratio > 1e2 && scale_ >= 0.0;
    o.metrics = {{"tau2_over_tau1", ratio}};
    o.detail = "Delta=1e-4, lambda=0.05: tau2/tau1 = " + fmt(ratio, 4) + " (expected > 1e2)";
    return o;
}

Outcome Battery::inv_interior_minimum() {
    bool all = true;
    json per = json::array();
    for (double t : {0.5, 1.0, 2.0, 5.0})
        for (double d : {0.01, 0.1, 0.5}) {
            std::vector<double> tau2, ls;
            for (double l = 0.2; l <= 10.0 + 1e-9; l += 0.05) {
                ls.push_back(l);
                tau2.push_back(timescales::analyze(reference(l, d, t)).full.tau2_or_inf());
            }
            const auto it = std::min_element(tau2.begin(), tau2.end());
            const bool in = it != tau2.begin() && it != tau2.end() - 1;
            all = all && in;
            per.push_back({{"T", t}, {"delta", d}, {"argmin_lambda", ls[it - tau2.begin()]}});
        }
    Outcome o;
    o.passed = all && scale_ >= 0.0;
    o.metrics = {{"minima", per}};
    o.detail = std::string("tau2 interior minimum on [0.2, 10] for all 12 (T, Delta): ") + (all ? "yes" : "NO");
    return o;
}

Outcome Battery::inv_weak_agreement() {
    const auto& uw = run(Method::UW, 0.1, false).rows;
    const auto& rc = run(Method::RC, 0.1, false).rows;
    const auto& ef = run(Method::EFFH, 0.1, false).rows;
    double worst = 0.0;
    for (std::size_t k = 0; k < uw.size(); ++k) {
        for (const auto* other : {&rc, &ef}) {
            const auto& b = (*other)[k];
            worst = std::max({worst, std::abs(uw[k].rho11 - b.rho11), std::abs(uw[k].rho22 - b.rho22),
                              std::abs(uw[k].rho33 - b.rho33)});
        }
        worst = std::max({worst, std::abs(rc[k].rho11 - ef[k].rho11), std::abs(rc[k].rho22 - ef[k].rho22),
                          std::abs(rc[k].rho33 - ef[k].rho33)});
    }
    Outcome o;
    o.passed = worst < tol(0.02);
    o.metrics = {{"max_population_difference", worst}};
    o.detail = "lambda=0.1 UW/RC/EFFH populations mutually within " + fmt(worst, 3);
    return o;
}

struct Entry {
    std::string id;
    std::string title;
    double budget_s;
    Outcome (Battery::*fn)();
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> list{
        {"AC1", "Closed-form timescales vs rate-matrix eigenvalues (1e4 draws)", 10, &Battery::ac1},
        {"AC2", "Weak-coupling reduction of the effective Hamiltonian", 1, &Battery::ac2},
        {"AC3", "SU(3) closed form vs matrix exponential", 1, &Battery::ac3},
        {"AC4", "Vacuum displacement moment", 1, &Battery::ac4},
        {"AC5", "Secular-Lindblad steady state is Gibbs (1e3 draws)", 5, &Battery::ac5},
        {"AC6", "Timescale branching at lambda=5", 1, &Battery::ac6},
        {"AC7", "tau1/tau2 shape suite", 5, &Battery::ac7},
        {"AC8", "Low- and high-temperature limit formulas", 5, &Battery::ac8},
        {"AC9", "Strong-coupling scaling", 5, &Battery::ac9},
        {"AC10", "Trace, Hermiticity and secular positivity along trajectories", 24 * 120, &Battery::ac10},
        {"AC11", "Metastable plateau and steady-state coherence", 10, &Battery::ac11},
        {"AC12", "RC vs EFFH steady states at strong coupling", 180, &Battery::ac12},
        {"AC13", "Initial-state independence and plateau edges", 30, &Battery::ac13},
        {"AC14", "RC truncation convergence", 300, &Battery::ac14},
        {"INV1", "Generator trace/Hermiticity preservation and spectrum", 60, &Battery::inv_generator},
        {"INV2", "Rate-matrix eigenvalues embedded in the secular generator", 5, &Battery::inv_embedding},
        {"INV3", "Two-level golden-rule oracle", 1, &Battery::inv_two_level},
        {"INV4", "Redfield vs secular EFFH dynamics at lambda=5", 5, &Battery::inv_redfield_secular},
        {"INV5", "Detailed balance and Gibbs populations of the rate matrix", 5, &Battery::inv_detailed_balance},
        {"INV6", "Effective spectrum invariants", 5, &Battery::inv_spectrum},
        {"INV7", "Redfield transient negativity", 24 * 120, &Battery::inv_positivity},
        {"INV8", "Degenerate excited states separate the timescales", 1, &Battery::inv_degenerate},
        {"INV9", "tau2 interior minimum on [0.2, 10]", 5, &Battery::inv_interior_minimum},
        {"INV10", "Weak-coupling agreement of UW, RC and EFFH", 400, &Battery::inv_weak_agreement},
    };
    return list;
}

bool selected(const std::string& id, const BatteryOptions& opt) {
    const bool is_inv = id.rfind("INV", 0) == 0;
    if (opt.only.empty()) return !is_inv || opt.include_invariants;
    for (const auto& s : opt.only) {
        if (s == id) return true;
        if (s == "AC" && !is_inv) return true;
        if (s == "INV" && is_inv) return true;
    }
    return false;
}

} // namespace

bool Report::all_passed() const {
    return std::all_of(items.begin(), items.end(), [](const ItemResult& r) { return r.passed; });
}

nlohmann::json Report::to_json() const {
    json j;
    j["tolerance_scale"] = tolerance_scale;
    j["total_runtime_s"] = total_runtime_s;
    j["passed"] = std::count_if(items.begin(), items.end(), [](const ItemResult& r) { return r.passed; });
    j["failed"] = std::count_if(items.begin(), items.end(), [](const ItemResult& r) { return !r.passed; });
    j["items"] = json::array();
    for (const auto& r : items) {
        json e = {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail},
                  {"runtime_s", r.runtime_s}, {"budget_s", r.budget_s}, {"metrics", r.metrics}};
        if (!r.error.empty()) e["error"] = r.error;
        j["items"].push_back(e);
    }
    return j;
}

std::string format_line(const ItemResult& r) {
    std::ostringstream os;
    os << std::left << std::setw(6) << r.id << (r.passed ? "PASS  " : "FAIL  ") << r.title << "  ["
       << std::setprecision(3) << r.runtime_s << " s / " << r.budget_s << " s]  "
       << (r.error.empty() ? r.detail : "error: " + r.error);
    return os.str();
}

std::string Report::summary() const {
    std::ostringstream os;
    for (const auto& r : items) os << format_line(r) << '\n';
    const auto pass = std::count_if(items.begin(), items.end(), [](const ItemResult& r) { return r.passed; });
    os << pass << "/" << items.size() << " passed in " << std::setprecision(3) << total_runtime_s << " s";
    if (tolerance_scale != 1.0) os << " (tolerance scale " << tolerance_scale << ")";
    os << '\n';
    return os.str();
}

std::vector<std::pair<std::string, std::string>> catalogue() {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : entries()) out.emplace_back(e.id, e.title);
    return out;
}

Report run_battery(const BatteryOptions& opt) {
    Battery b(opt.tolerance_scale);
    Report rep;
    rep.tolerance_scale = opt.tolerance_scale;
    const auto t_all = Clock::now();
    for (const auto& e : entries()) {
        if (!selected(e.id, opt)) continue;
        ItemResult r;
        r.id = e.id;
        r.title = e.title;
        r.budget_s = e.budget_s;
        const auto t0 = Clock::now();
        try {
            const Outcome o = (b.*e.fn)();
            r.passed = o.passed;
            r.detail = o.detail;
            r.metrics = o.metrics;
        } catch (const std::exception& ex) {
            r.passed = false;
            r.error = ex.what();
        }
        r.runtime_s = seconds_since(t0);
        if (r.runtime_s > r.budget_s) {
            r.passed = false;
            r.detail += " [over runtime budget]";
        }
        if (opt.on_result) opt.on_result(r);
        rep.items.push_back(std::move(r));
    }
    rep.total_runtime_s = seconds_since(t_all);
    return rep;
}

} // namespace rcpt::validation
