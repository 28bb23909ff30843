// redfield.hpp — Redfield and secular-Lindblad generators, propagation and
// steady states for the three simulation configurations:
//
//   UW    bare H_S, coupling S, Brownian bath (weak-coupling baseline; wrong at
//         strong coupling, kept for comparison)
//   RC    H_S + lambda S (a + a^dagger) + Omega a^dagger a on 3 * rc_levels
//         states, coupling (a + a^dagger), Ohmic bath
//   EFFH  diag(E0, E-, E+) with coupling [[0,p,q],[p,0,0],[q,0,0]],
//         effective Ohmic bath
//
// Superoperators act on column-stacked density matrices (vec(X)[i + j d] = X(i, j)).
// The Lamb shift is dropped: the bath enters only through
//   Gamma(w) = pi J(w) [n(w) + 1]  (w > 0),   pi J(|w|) n(|w|)  (w < 0),
//   Gamma(0) = pi T J'(0).

#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rcpt/linalg.hpp"
#include "rcpt/mapping.hpp"
#include "rcpt/model.hpp"
#include "rcpt/timescales.hpp"

namespace rcpt::redfield {

using model::ModelParams;
using model::SpectralDensity;

enum class Method { UW, RC, EFFH };

std::string to_string(Method m);
Method method_from_string(const std::string& s);  // "uw" | "rc" | "effh"

struct TimeGrid {
    std::vector<double> times;

    // `points` log-spaced instants on [t_min, t_max].
    static TimeGrid log_spaced(double t_min, double t_max, int points);
};

struct SimulationConfig {
    Method method{Method::EFFH};
    int rc_levels{10};
    ModelParams params;
    Eigen::Matrix3cd initial_state{Eigen::Matrix3cd::Identity() / 3.0};  // site basis
    TimeGrid grid{TimeGrid::log_spaced(1e-2, 1e7, 400)};
};

// Hermitian, eigenvalues >= -1e-12, unit trace to 1e-12; rc_levels >= 2.
void validate(const SimulationConfig& cfg);

Eigen::Matrix3cd uniform_state();  // diag(1/3, 1/3, 1/3)
Eigen::Matrix3cd ground_state();   // diag(1, 0, 0)

double halffourier_rate(const SpectralDensity& j, double temperature, double w);

// Hamiltonian, coupling and bath of one configuration. `site_map` takes a 3x3
// state of this configuration's frame to the site basis (P for EFFH,
// identity otherwise); for RC the RC factor must be traced out first.
struct OpenSystem {
    Method method{Method::EFFH};
    HermitianMatrix hamiltonian;
    HermitianMatrix coupling;
    SpectralDensity bath;
    Eigen::Index rc_levels{0};
    double rc_omega{0.0};  // RC frequency, RC runs only
    Eigen::Matrix3d site_map{Eigen::Matrix3d::Identity()};

    Eigen::Index dim() const { return hamiltonian.dim(); }
    // Site-basis 3x3 state -> this configuration's full state.
    MatrixXcd embed(const Eigen::Matrix3cd& site_state, double temperature) const;
    // Full state -> site-basis 3x3 state.
    Eigen::Matrix3cd to_site(const MatrixXcd& state) const;
};

OpenSystem build_system(const SimulationConfig& cfg);

enum class GeneratorKind { Redfield, SecularLindblad };

// d vec(rho)/dt = matrix * vec(rho), expressed in the columns of `frame`:
// a state rho_g in the generator frame is frame * rho_g * frame^dagger in the
// caller's frame.
struct Generator {
    Eigen::Index dim{0};
    MatrixXcd matrix;
    GeneratorKind kind{GeneratorKind::Redfield};
    MatrixXcd frame;

    MatrixXcd to_frame(const MatrixXcd& rho) const;     // caller -> generator
    MatrixXcd from_frame(const MatrixXcd& rho) const;   // generator -> caller
};

// Works in the eigenbasis of H. Bohr frequencies are rounded to 1e-12 so
// degenerate pairs share Gamma(0).
Generator build_redfield_generator(const HermitianMatrix& h, const HermitianMatrix& s,
                                   const SpectralDensity& j, double temperature);

Generator build_redfield_generator(const OpenSystem& sys, double temperature);

// Four jump operators q|E+><E0|, p|E-><E0|, q|E0><E+|, p|E0><E-| with rates
// gamma_{+0}, gamma_{-0}, gamma_{0+}, gamma_{0-}; frame = (E0, E-, E+) basis.
Generator build_secular_lindblad_generator(const mapping::EffectiveSpectrum& spec,
                                           const timescales::RateSet& rates);

struct GeneratorCheck {
    double trace_error{0.0};        // max |Tr(G rho)| over Hermitian trace-1 probes
    double hermiticity_error{0.0};  // max |G rho - (G rho)^dagger| over the same probes
    double max_real_eigenvalue{0.0};
};

GeneratorCheck check_generator(const Generator& g, int probes = 4, unsigned seed = 7);

struct PropagationOptions {
    double condition_limit{1e12};   // above this, fall back to Runge-Kutta
    bool force_runge_kutta{false};
    double rk_rtol{1e-10};
    double rk_atol{1e-12};
    long rk_max_steps{2'000'000};
};

struct Trajectory {
    std::vector<double> times;
    std::vector<MatrixXcd> states;   // caller frame
    std::vector<double> trace_error;
    std::vector<double> hermiticity_error;
    std::vector<double> min_eigenvalue;
    double condition_estimate{0.0};
    bool used_runge_kutta{false};
};

// rho(t) = exp(G t) rho0 at every grid instant. rho0 is in the caller's frame.
Trajectory propagate(const Generator& g, const MatrixXcd& rho0, const std::vector<double>& times,
                     const PropagationOptions& opt = {});

struct SteadyState {
    MatrixXcd rho;     // caller frame
    double residual{0.0};
};

// Throws NumericalError when the zero eigenvalue is not simple within 1e-10.
SteadyState steady_state(const Generator& g);

struct ObservableRow {
    double t{0.0};
    double rho11{0.0}, rho22{0.0}, rho33{0.0};
    double re_rho32{0.0}, im_rho32{0.0};
    double trace_error{0.0};
    double min_eigenvalue{0.0};
};

// 3x3 trajectory mapped through basis_map (rho_site = M rho M^T).
std::vector<ObservableRow> observables(const Trajectory& traj, const Eigen::Matrix3d& basis_map);

// Configuration-aware version: traces out the RC for RC runs.
std::vector<ObservableRow> site_observables(const Trajectory& traj, const OpenSystem& sys);

// Partial trace over the RC factor of every state.
Trajectory reduce_rc(const Trajectory& traj, Eigen::Index rc_levels);

struct Simulation {
    OpenSystem system;
    Generator generator;
    Trajectory trajectory;
    std::vector<ObservableRow> rows;
};

Simulation simulate(const SimulationConfig& cfg, const PropagationOptions& opt = {});

// Steady state of one configuration, mapped to the site basis.
struct SiteSteadyState {
    Eigen::Matrix3cd rho;
    double residual{0.0};
};

SiteSteadyState site_steady_state(Method method, const ModelParams& params, int rc_levels = 10);

} // namespace rcpt::redfield
