// timescales.cpp — Golden-rule rates, rate matrix and closed-form timescales

#include "rcpt/timescales.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "rcpt/errors.hpp"

namespace rcpt::timescales {

namespace {

using std::numbers::pi;
using mp = boost::multiprecision::cpp_bin_float_50;

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

double bose_einstein(double w, double temperature) {
    if (!(w > 0.0)) throw ParameterError("bose_einstein: frequency must be positive");
    if (!(temperature > 0.0)) throw ParameterError("bose_einstein: temperature must be positive");
    return 1.0 / std::expm1(w / temperature);
}

RateSet golden_rates(const EffectiveSpectrum& spec, const ModelParams& params) {
    RateSet r;
    r.e_plus_0 = spec.bohr_plus();
    r.e_minus_0 = spec.bohr_minus();
    if (!(r.e_minus_0 > 0.0) || !(r.e_plus_0 > 0.0)) {
        std::ostringstream os;
        os << "golden_rates: out of regime, E-0 = " << r.e_minus_0 << ", E+0 = " << r.e_plus_0
           << " (ground level must stay lowest)";
        throw ParameterError(os.str());
    }
    const auto jeff = model::SpectralDensity::effective_ohmic(params);
    const double jp = 2.0 * pi * jeff.value(r.e_plus_0);
    const double jm = 2.0 * pi * jeff.value(r.e_minus_0);
    const double np = bose_einstein(r.e_plus_0, params.temperature);
    const double nm = bose_einstein(r.e_minus_0, params.temperature);
    r.gamma_up_plus = jp * np;
    r.gamma_down_plus = jp * (np + 1.0);
    r.gamma_up_minus = jm * nm;
    r.gamma_down_minus = jm * (nm + 1.0);
    return r;
}

Eigen::Vector2d RateMatrix::steady_state() const { return m.partialPivLu().solve(-d); }

RateMatrix rate_matrix(const RateSet& r, const EffectiveSpectrum& spec) {
    const double p2 = spec.p2();
    const double q2 = spec.q2();
    RateMatrix rm;
    rm.m << -p2 * (r.gamma_up_minus + r.gamma_down_minus), -p2 * r.gamma_up_minus,
            -q2 * r.gamma_up_plus,                          -q2 * (r.gamma_up_plus + r.gamma_down_plus);
    rm.d << p2 * r.gamma_up_minus, q2 * r.gamma_up_plus;
    return rm;
}

Eigen::Matrix3d population_generator(const RateSet& r, const EffectiveSpectrum& spec) {
    const double p2 = spec.p2();
    const double q2 = spec.q2();
    const double up_m = p2 * r.gamma_up_minus, dn_m = p2 * r.gamma_down_minus;
    const double up_p = q2 * r.gamma_up_plus, dn_p = q2 * r.gamma_down_plus;
    Eigen::Matrix3d w;
    w << -(up_m + up_p), dn_m,  dn_p,
         up_m,           -dn_m, 0.0,
         up_p,           0.0,   -dn_p;
    return w;
}

double TimescalePair::tau2_or_inf() const {
    return tau2.value_or(std::numeric_limits<double>::infinity());
}

Eigen::Vector2d rate_matrix_eigenvalues(const RateMatrix& rm) {
    Eigen::Matrix<mp, 2, 2> m = rm.m.cast<mp>();
    Eigen::EigenSolver<Eigen::Matrix<mp, 2, 2>> es(m, false);
    Eigen::Vector2d out;
    for (int k = 0; k < 2; ++k) {
        const auto ev = es.eigenvalues()(k);
        if (abs(ev.imag()) > mp(1e-20) * (abs(ev.real()) + mp(1e-300))) {
            throw NumericalError("rate matrix has complex eigenvalues", static_cast<double>(ev.imag()));
        }
        out(k) = static_cast<double>(ev.real());
    }
    if (out(0) > out(1)) std::swap(out(0), out(1));
    return out;
}

TimescalePair relaxation_timescales(const RateMatrix& rm, const RateSet& r, const EffectiveSpectrum& spec) {
    const double p2 = spec.p2();
    const double q2 = spec.q2();
    const double a = p2 * (r.gamma_up_minus + r.gamma_down_minus);
    const double b = q2 * (r.gamma_up_plus + r.gamma_down_plus);
    const double disc = (a - b) * (a - b) + 4.0 * p2 * q2 * r.gamma_up_plus * r.gamma_up_minus;
    if (!(disc >= -1e-12)) throw NumericalError("relaxation_timescales: negative discriminant", disc);
    const double s = std::sqrt(std::max(disc, 0.0));
    if (!(a + b + s > 0.0)) throw ParameterError("relaxation_timescales: no dissipation (lambda = 0?)");

    // 2/(a+b-s) rewritten through det = ((a+b)^2 - s^2)/4, which is a sum of positive terms.
    const double det = p2 * q2 *
        (r.gamma_up_minus * r.gamma_down_plus + r.gamma_down_minus * r.gamma_up_plus +
         r.gamma_down_minus * r.gamma_down_plus);

    TimescalePair out;
    out.tau1 = 2.0 / (a + b + s);
    if (det > 0.0) out.tau2 = (a + b + s) / (2.0 * det);

    const Eigen::Vector2d eig = rate_matrix_eigenvalues(rm);
    // eig ascending: eig(0) is the fast (most negative) mode.
    const double fast = -1.0 / eig(0);
    const double rel1 = std::abs(fast - out.tau1) / out.tau1;
    double rel2 = 0.0;
    if (out.tau2) {
        const double slow = -1.0 / eig(1);
        rel2 = std::abs(slow - *out.tau2) / *out.tau2;
    } else if (eig(1) != 0.0) {
        rel2 = std::abs(eig(1));
    }
    if (!(rel1 < 1e-10) || !(rel2 < 1e-10)) {
        throw NumericalError("relaxation_timescales: closed form disagrees with rate-matrix eigenvalues",
                             std::max(rel1, rel2));
    }
    if (out.tau2 && *out.tau2 < out.tau1) std::swap(out.tau1, *out.tau2);
    return out;
}

TimescalePair tau_low_temperature(const EffectiveSpectrum& spec, const ModelParams& params) {
    if (params.lambda == 0.0) throw ParameterError("tau_low_temperature: no dissipation at lambda = 0");
    const double c = 2.0 * pi * std::pow(2.0 * params.lambda / params.omega, 2) * params.gamma;
    TimescalePair out;
    out.tau1 = 1.0 / (c * spec.q2() * spec.bohr_plus());
    if (spec.p2() > 0.0) out.tau2 = 1.0 / (c * spec.p2() * spec.bohr_minus());
    return out;
}

TimescalePair tau_high_temperature(const EffectiveSpectrum& spec, const ModelParams& params) {
    if (params.lambda == 0.0) throw ParameterError("tau_high_temperature: no dissipation at lambda = 0");
    const double c = 2.0 * pi * params.gamma * params.temperature * std::pow(2.0 * params.lambda / params.omega, 2);
    const double x = spec.q2() - spec.p2() / 2.0;
    TimescalePair out;
    out.tau1 = 1.0 / (c * (1.0 + x));
    if (1.0 - x > 0.0) out.tau2 = 1.0 / (c * (1.0 - x));
    return out;
}

double secular_ratio(const RateSet& r, const EffectiveSpectrum& spec) {
    const double min_bohr = std::min({r.e_minus_0, r.e_plus_0, spec.e_plus - spec.e_minus});
    const double max_rate = std::max({spec.p2() * (r.gamma_up_minus + r.gamma_down_minus),
                                      spec.q2() * (r.gamma_up_plus + r.gamma_down_plus)});
    return max_rate > 0.0 ? min_bohr / max_rate : std::numeric_limits<double>::infinity();
}

Analysis analyze(const ModelParams& params) {
    Analysis a;
    a.params = params;
    a.spectrum = mapping::diagonalize_effective(params);
    a.rates = golden_rates(a.spectrum, params);
    a.rate_matrix = rate_matrix(a.rates, a.spectrum);
    a.full = relaxation_timescales(a.rate_matrix, a.rates, a.spectrum);
    a.low_t = tau_low_temperature(a.spectrum, params);
    a.high_t = tau_high_temperature(a.spectrum, params);
    a.secular_ratio = secular_ratio(a.rates, a.spectrum);
    return a;
}

ScalingReport scaling_diagnostics(const ModelParams& params, const std::vector<double>& grid) {
    if (grid.size() < 4) throw ParameterError("scaling_diagnostics: need at least 4 lambda points");
    std::vector<double> l2, lnl, ln_t1, ln_t2, ln_t2_red;
    for (double lam : grid) {
        auto p = params;
        p.lambda = lam;
        const auto a = analyze(p);
        if (!a.full.tau2) throw NumericalError("scaling_diagnostics: slow sector does not relax", lam);
        l2.push_back(lam * lam);
        lnl.push_back(std::log(lam));
        ln_t1.push_back(std::log(a.full.tau1));
        ln_t2.push_back(std::log(*a.full.tau2));
        ln_t2_red.push_back(std::log(*a.full.tau2 / (lam * lam)));
    }
    ScalingReport rep;
    rep.tau2_exp_slope = fit_slope(l2, ln_t2);
    rep.tau2_exp_slope_target = 1.0 / (params.omega * params.omega);
    rep.tau2_exp_slope_prefactor_removed = fit_slope(l2, ln_t2_red);
    rep.tau1_power = fit_slope(lnl, ln_t1);

    auto sorted = grid;
    std::sort(sorted.begin(), sorted.end());
    rep.ratio_lambda = sorted[sorted.size() / 2];
    auto base = params;
    base.lambda = rep.ratio_lambda;
    auto doubled = base;
    doubled.delta = 2.0 * base.delta;
    rep.delta_doubling_ratio = analyze(doubled).full.tau2_or_inf() / analyze(base).full.tau2_or_inf();
    return rep;
}

} // namespace rcpt::timescales
