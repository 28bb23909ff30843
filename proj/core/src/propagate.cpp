// propagate.cpp — Time evolution, steady states and site-basis observables.

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "rcpt/errors.hpp"
#include "rcpt/redfield.hpp"

namespace rcpt::redfield {

namespace {

constexpr double kZeroEigenvalue = 1e-10;

void record(Trajectory& traj, double t, MatrixXcd rho) {
    traj.times.push_back(t);
    traj.trace_error.push_back(std::abs(rho.trace() - cplx(1.0)));
    traj.hermiticity_error.push_back(hermiticity_error(rho));
    traj.min_eigenvalue.push_back(min_eigenvalue(rho));
    traj.states.push_back(std::move(rho));
}

void check_times(const std::vector<double>& times) {
    double prev = 0.0;
    for (double t : times) {
        if (!(t >= prev) || !std::isfinite(t)) throw ParameterError("times must be finite, non-negative and sorted");
        prev = t;
    }
}

void runge_kutta(const Generator& g, const VectorXcd& x0, const std::vector<double>& times,
                 const PropagationOptions& opt, double cond, Trajectory& traj) {
    namespace ode = boost::numeric::odeint;
    using State = std::vector<cplx>;
    const Eigen::Index n = x0.size();

    State x(x0.data(), x0.data() + n);
    std::vector<double> grid;
    grid.reserve(times.size() + 1);
    const bool prepend = times.front() > 0.0;
    if (prepend) grid.push_back(0.0);
    grid.insert(grid.end(), times.begin(), times.end());

    auto rhs = [&](const State& y, State& dy, double) {
        Eigen::Map<const VectorXcd> ym(y.data(), n);
        Eigen::Map<VectorXcd> dm(dy.data(), n);
        dm.noalias() = g.matrix * ym;
    };
    std::size_t seen = 0;
    auto observe = [&](const State& y, double t) {
        if (seen++ == 0 && prepend) return;
        Eigen::Map<const VectorXcd> ym(y.data(), n);
        record(traj, t, g.from_frame(unvec(ym, g.dim)));
    };

    auto stepper = ode::make_controlled(opt.rk_atol, opt.rk_rtol, ode::runge_kutta_dopri5<State>());
    const double dt0 = std::max(1e-6, grid.back() * 1e-12);
    try {
        ode::integrate_times(stepper, rhs, x, grid.begin(), grid.end(), dt0, observe,
                             ode::max_step_checker(static_cast<int>(std::min<long>(opt.rk_max_steps, 2'000'000'000L))));
    } catch (const std::exception& e) {
        throw NumericalError(std::string("Runge-Kutta fallback failed: ") + e.what(), cond);
    }
}

// Decaying and oscillating modes are traceless in exact arithmetic. Near-degenerate
// slow modes pick up a spurious trace that leaks into Tr rho as they decay, so
// remove it with a multiple of the stationary mode.
void remove_mode_traces(MatrixXcd& v, const VectorXcd& lam, Eigen::Index d) {
    auto trace_of = [&](Eigen::Index k) {
        cplx tr = 0.0;
        for (Eigen::Index i = 0; i < d; ++i) tr += v(i * (d + 1), k);
        return tr;
    };
    Eigen::Index zero = -1;
    double best = 0.0;
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        if (lam(k) != cplx(0.0)) continue;
        const double a = std::abs(trace_of(k));
        if (a > best) { best = a; zero = k; }
    }
    if (zero < 0 || best < 1e-8) return;
    const cplx t0 = trace_of(zero);
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        if (lam(k) == cplx(0.0)) continue;
        v.col(k) -= (trace_of(k) / t0) * v.col(zero);
    }
}

} // namespace

Trajectory propagate(const Generator& g, const MatrixXcd& rho0, const std::vector<double>& times,
                     const PropagationOptions& opt) {
    if (rho0.rows() != g.dim || rho0.cols() != g.dim) throw ParameterError("initial state has wrong dimension");
    check_times(times);
    Trajectory traj;
    if (times.empty()) return traj;

    const VectorXcd x0 = vec(g.to_frame(rho0));

    Eigen::ComplexEigenSolver<MatrixXcd> es(g.matrix, true);
    if (es.info() != Eigen::Success) throw NumericalError("generator eigendecomposition failed", 0.0);
    VectorXcd lam = es.eigenvalues();
    for (auto& l : lam)
        if (std::abs(l) < kZeroEigenvalue) l = 0.0;
    MatrixXcd v = es.eigenvectors();
    remove_mode_traces(v, lam, g.dim);
    Eigen::PartialPivLU<MatrixXcd> lu(v);
    const double rc = lu.rcond();
    traj.condition_estimate = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();

    if (opt.force_runge_kutta || !(traj.condition_estimate <= opt.condition_limit)) {
        traj.used_runge_kutta = true;
        runge_kutta(g, x0, times, opt, traj.condition_estimate, traj);
        return traj;
    }

    const VectorXcd c = lu.solve(x0);
    VectorXcd w(c.size());
    for (double t : times) {
        for (Eigen::Index k = 0; k < c.size(); ++k) w(k) = c(k) * std::exp(lam(k) * t);
        const VectorXcd x = v * w;
        if (!x.allFinite()) throw NumericalError("propagation overflow", traj.condition_estimate);
        record(traj, t, g.from_frame(unvec(x, g.dim)));
    }
    return traj;
}

SteadyState steady_state(const Generator& g) {
    const Eigen::Index d = g.dim;
    const Eigen::Index n = d * d;

    Eigen::ComplexEigenSolver<MatrixXcd> es(g.matrix, false);
    if (es.info() != Eigen::Success) throw NumericalError("generator eigendecomposition failed", 0.0);
    const VectorXcd lam = es.eigenvalues();
    int zeros = 0;
    double smallest = std::numeric_limits<double>::infinity();
    for (const auto& l : lam) {
        smallest = std::min(smallest, std::abs(l));
        if (std::abs(l) < kZeroEigenvalue) ++zeros;
    }
    if (zeros == 0) throw NumericalError("generator has no zero eigenvalue", smallest);
    if (zeros > 1) throw NumericalError("steady state is not unique", zeros);

    // Row 0 of G (d rho_00/dt) is minus the sum of the other diagonal rows;
    // swap it for the trace functional.
    MatrixXcd a = g.matrix;
    a.row(0).setZero();
    for (Eigen::Index k = 0; k < d; ++k) a(0, k * (d + 1)) = 1.0;
    VectorXcd rhs = VectorXcd::Zero(n);
    rhs(0) = 1.0;
    const VectorXcd x = a.partialPivLu().solve(rhs);

    MatrixXcd rho = unvec(x, d);
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace();

    SteadyState ss;
    ss.residual = (g.matrix * vec(rho)).norm();
    if (!(ss.residual < 1e-6)) throw NumericalError("steady-state solve did not converge", ss.residual);
    ss.rho = g.from_frame(rho);
    return ss;
}

Trajectory reduce_rc(const Trajectory& traj, Eigen::Index rc_levels) {
    Trajectory out;
    out.condition_estimate = traj.condition_estimate;
    out.used_runge_kutta = traj.used_runge_kutta;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const auto& s = traj.states[k];
        if (s.rows() % rc_levels != 0) throw ParameterError("state dimension is not a multiple of rc_levels");
        record(out, traj.times[k], trace_out_outer(s, rc_levels, s.rows() / rc_levels));
    }
    return out;
}

std::vector<ObservableRow> observables(const Trajectory& traj, const Eigen::Matrix3d& basis_map) {
    std::vector<ObservableRow> rows;
    rows.reserve(traj.states.size());
    const Eigen::Matrix3cd m = basis_map.cast<cplx>();
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        if (traj.states[k].rows() != 3) throw ParameterError("observables need 3x3 states");
        const Eigen::Matrix3cd r = m * traj.states[k] * m.adjoint();
        ObservableRow row;
        row.t = traj.times[k];
        row.rho11 = r(0, 0).real();
        row.rho22 = r(1, 1).real();
        row.rho33 = r(2, 2).real();
        row.re_rho32 = r(2, 1).real();
        row.im_rho32 = r(2, 1).imag();
        row.trace_error = traj.trace_error[k];
        row.min_eigenvalue = traj.min_eigenvalue[k];
        rows.push_back(row);
    }
    return rows;
}

std::vector<ObservableRow> site_observables(const Trajectory& traj, const OpenSystem& sys) {
    if (sys.method != Method::RC) return observables(traj, sys.site_map);
    // Positivity and trace diagnostics stay those of the full RC state.
    auto rows = observables(reduce_rc(traj, sys.rc_levels), sys.site_map);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k].trace_error = traj.trace_error[k];
        rows[k].min_eigenvalue = traj.min_eigenvalue[k];
    }
    return rows;
}

Simulation simulate(const SimulationConfig& cfg, const PropagationOptions& opt) {
    Simulation sim;
    sim.system = build_system(cfg);
    sim.generator = build_redfield_generator(sim.system, cfg.params.temperature);
    sim.trajectory = propagate(sim.generator, sim.system.embed(cfg.initial_state, cfg.params.temperature),
                               cfg.grid.times, opt);
    sim.rows = site_observables(sim.trajectory, sim.system);
    return sim;
}

SiteSteadyState site_steady_state(Method method, const ModelParams& params, int rc_levels) {
    SimulationConfig cfg;
    cfg.method = method;
    cfg.params = params;
    cfg.rc_levels = rc_levels;
    const OpenSystem sys = build_system(cfg);
    const SteadyState ss = steady_state(build_redfield_generator(sys, params.temperature));
    return {sys.to_site(ss.rho), ss.residual};
}

} // namespace rcpt::redfield
