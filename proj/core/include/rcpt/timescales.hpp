// timescales.hpp — Secular-Lindblad rates, the 2x2 population rate matrix and
// the two relaxation timescales of the effective three-level system.

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rcpt/mapping.hpp"
#include "rcpt/model.hpp"

namespace rcpt::timescales {

using mapping::EffectiveSpectrum;
using model::ModelParams;

// n(w) = 1 / (e^{w/T} - 1); w <= 0 or T <= 0 throws ParameterError.
double bose_einstein(double w, double temperature);

// Golden-rule rates between |E0> and |E+->; "up" = absorption (E0 -> E+-).
//   up   = 2 pi J_eff(E) n(E),   down = 2 pi J_eff(E) [n(E) + 1]
// The p^2, q^2 matrix elements are NOT included here.
struct RateSet {
    double gamma_up_plus{0.0};     // gamma_{+0}
    double gamma_up_minus{0.0};    // gamma_{-0}
    double gamma_down_plus{0.0};   // gamma_{0+}
    double gamma_down_minus{0.0};  // gamma_{0-}
    double e_plus_0{0.0};
    double e_minus_0{0.0};
};

// J_eff carries the e^{-w/Lambda} cutoff when params.cutoff is finite.
// Throws ParameterError if either Bohr frequency is not positive (level crossing).
RateSet golden_rates(const EffectiveSpectrum& spec, const ModelParams& params);

// d/dt (rho_--, rho_++) = m (rho_--, rho_++) + d, with rho_00 eliminated.
struct RateMatrix {
    Eigen::Matrix2d m{Eigen::Matrix2d::Zero()};
    Eigen::Vector2d d{Eigen::Vector2d::Zero()};

    // Solves m rho + d = 0.
    Eigen::Vector2d steady_state() const;
};

RateMatrix rate_matrix(const RateSet& rates, const EffectiveSpectrum& spec);

// Full 3x3 population generator on (rho_00, rho_--, rho_++); columns sum to zero.
Eigen::Matrix3d population_generator(const RateSet& rates, const EffectiveSpectrum& spec);

// tau1 <= tau2. tau2 is empty when the E- sector does not relax (p = 0).
struct TimescalePair {
    double tau1{0.0};
    std::optional<double> tau2;

    bool slow_sector_relaxes() const { return tau2.has_value(); }
    double tau2_or_inf() const;
};

// Closed-form timescales, cross-checked against -1/eig(rm.m) computed in
// 50-digit arithmetic (1e-10 relative). Throws NumericalError on mismatch.
TimescalePair relaxation_timescales(const RateMatrix& rm, const RateSet& rates, const EffectiveSpectrum& spec);

// Eigenvalues of rm.m in 50-digit arithmetic, ascending by real part.
Eigen::Vector2d rate_matrix_eigenvalues(const RateMatrix& rm);

// T -> 0: tau1 = 1/[2 pi q^2 (2 lambda/Omega)^2 Gamma E+0], tau2 likewise with p^2, E-0.
TimescalePair tau_low_temperature(const EffectiveSpectrum& spec, const ModelParams& params);

// High T: 1/[2 pi Gamma T (2 lambda/Omega)^2 (1 +- (q^2 - p^2/2))].
TimescalePair tau_high_temperature(const EffectiveSpectrum& spec, const ModelParams& params);

// Smallest Bohr frequency over the largest p^2/q^2-weighted rate. Large values
// mean the secular approximation in the effective eigenbasis is safe.
double secular_ratio(const RateSet& rates, const EffectiveSpectrum& spec);

// Everything the sweep and figure commands need for one parameter point.
struct Analysis {
    ModelParams params;
    mapping::EffectiveSpectrum spectrum;
    RateSet rates;
    RateMatrix rate_matrix;
    TimescalePair full;
    TimescalePair low_t;
    TimescalePair high_t;
    double secular_ratio{0.0};
};

Analysis analyze(const ModelParams& params);

struct ScalingReport {
    // ln tau2 vs lambda^2 (target 1/Omega^2)
    double tau2_exp_slope{0.0};
    double tau2_exp_slope_target{0.0};
    // ln(tau2 / lambda^2) vs lambda^2, i.e. with the (lambda/Delta)^2 prefactor removed
    double tau2_exp_slope_prefactor_removed{0.0};
    // ln tau1 vs ln lambda (target -2)
    double tau1_power{0.0};
    // tau2(2 Delta) / tau2(Delta) at ratio_lambda (target 1/4)
    double delta_doubling_ratio{0.0};
    double ratio_lambda{0.0};
};

// Fits over lambda_grid at the other parameters of `params`. The doubling
// ratio is taken at the grid median. Fewer than 4 points throws ParameterError.
ScalingReport scaling_diagnostics(const ModelParams& params, const std::vector<double>& lambda_grid);

} // namespace rcpt::timescales
