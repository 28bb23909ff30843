// oracles.hpp — Reference computations for the test suite and the validation
// battery. Nothing here calls the closed forms in rcpt::mapping or
// rcpt::timescales; each oracle reaches the same quantity by a different route.

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "rcpt/linalg.hpp"
#include "rcpt/model.hpp"

namespace rcpt::oracle {

using model::ModelParams;

// Dense matrix exponential (Pade scaling and squaring).
MatrixXcd expm(const MatrixXcd& m);

double bose(double w, double temperature);

// J(w) for the three bath shapes, written out from their definitions.
double brownian_j(const ModelParams& p, double w);
double ohmic_j(const ModelParams& p, double w);
double effective_ohmic_j(const ModelParams& p, double w);

// Gamma(w) = pi J(w) (n + 1) for w > 0, pi J(|w|) n(|w|) for w < 0; w = 0 by
// the limit of the w > 0 branch evaluated at a tiny frequency.
double half_fourier(const std::function<double(double)>& j, double temperature, double w);

// <0_RC| U (H_S + lambda S (a + a^dagger) + Omega a^dagger a) U^dagger |0_RC>
// with U = exp((lambda/Omega)(a^dagger - a) S), on `fock` RC levels.
Eigen::Matrix3d polaron_vacuum_hamiltonian(const ModelParams& p, int fock = 60);

struct Spectrum {
    Eigen::Vector3d energies;  // (E0, E-, E+)
    double p2{0.0};            // |<E-|S|E0>|^2
    double q2{0.0};            // |<E+|S|E0>|^2
};

// Numerical diagonalization of a 3x3 effective Hamiltonian with the
// site-1 block decoupled from the (2,3) block.
Spectrum spectrum_of(const Eigen::Matrix3d& h);

// The closed-form mixing angle pairs E- with the S-overlap that a dense
// eigensolver attributes to the upper eigenvector (and E+ with the lower one).
// Energies are unchanged; p2 and q2 are exchanged to match that labelling.
Spectrum closed_form_labels(const Spectrum& s);

struct Rates {
    double up_plus{0.0}, up_minus{0.0}, down_plus{0.0}, down_minus{0.0};
};

Rates golden_rates(const Spectrum& s, const ModelParams& p, bool cutoff = true);

// -1/eigenvalues of the population rate matrix, by the quadratic formula in
// 50-digit arithmetic. first = tau1 (fast), second = tau2 (slow).
std::pair<double, double> timescales(const Spectrum& s, const Rates& r);

// Boltzmann weights over the given energies.
Eigen::VectorXd gibbs(const Eigen::VectorXd& energies, double temperature);

// Redfield generator assembled entry by entry from the four-term index sum,
// in the eigenbasis of H (column stacking). gamma(w) is the rate function.
MatrixXcd redfield_elementwise(const Eigen::VectorXd& omegas, const MatrixXcd& s_eig,
                               const std::function<double(double)>& gamma);

// Fixed-step classical RK4 of d vec(rho)/dt = G vec(rho).
std::vector<MatrixXcd> rk4(const MatrixXcd& g, const MatrixXcd& rho0, const std::vector<double>& times,
                           double max_step);

} // namespace rcpt::oracle
