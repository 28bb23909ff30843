// mapping.cpp — RC extraction, SU(3) exponential and the effective Hamiltonian

#include "rcpt/mapping.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rcpt/errors.hpp"

namespace rcpt::mapping {

namespace {

using std::numbers::pi;

// Adaptive Gauss-Kronrod over [a, b] with breakpoints around a resonance.
template <class F>
double integrate(F f, const std::vector<double>& breaks, double& total_error) {
    using boost::math::quadrature::gauss_kronrod;
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double err = 0.0;
        sum += gauss_kronrod<double, 61>::integrate(f, breaks[i], breaks[i + 1], 20, 1e-13, &err);
        total_error += err;
    }
    return sum;
}

} // namespace

RcEstimate rc_parameters(const SpectralDensity& j, double w_max) {
    if (j.kind != model::SpectralKind::Brownian) {
        throw ParameterError("rc_parameters: only Brownian spectral densities carry RC moments");
    }
    if (!(w_max >= 10.0 * j.omega)) throw ParameterError("rc_parameters: w_max must be >= 10 Omega");

    RcEstimate out;
    if (j.lambda == 0.0) {
        out.degenerate = true;
        out.omega = j.omega;
        return out;
    }

    const double width = std::max(pi * j.gamma * j.omega, 1e-12 * j.omega);
    std::vector<double> breaks{0.0};
    for (double k : {-20.0, -2.0, 0.0, 2.0, 20.0}) {
        const double x = j.omega + k * width;
        if (x > breaks.back() && x < w_max) breaks.push_back(x);
    }
    breaks.push_back(w_max);

    double err1 = 0.0, err3 = 0.0;
    out.first_moment = integrate([&](double w) { return w * j.value(w); }, breaks, err1);
    out.third_moment = integrate([&](double w) { return w * w * w * j.value(w); }, breaks, err3);
    out.quadrature_error = std::max(err1 / out.first_moment, err3 / out.third_moment);
    if (!(out.quadrature_error < 1e-8)) {
        throw NumericalError("rc_parameters: quadrature did not converge", out.quadrature_error);
    }

    out.omega = std::sqrt(out.third_moment / out.first_moment);
    out.lambda = std::sqrt(out.first_moment / out.omega);
    return out;
}

Eigen::Matrix3cd su3_exponential(const HermitianMatrix& s_in, double theta) {
    if (s_in.dim() != 3) throw ParameterError("su3_exponential: expected a 3x3 generator");
    const Eigen::Matrix3cd s = s_in.entries();
    const double scale = 1.0 + s.cwiseAbs().maxCoeff();
    if (std::abs(s.trace()) > 1e-12 * scale) throw ParameterError("su3_exponential: generator is not traceless");

    // Normalize to tr S^2 = 2, where the eigenvalues are (2/sqrt3) sin(Phi + 2 pi k / 3).
    const double norm = std::sqrt((s * s).trace().real() / 2.0);
    if (norm == 0.0) return Eigen::Matrix3cd::Identity();
    const Eigen::Matrix3cd sn = s / norm;
    const Eigen::Matrix3cd sn2 = sn * sn;
    const double t = theta * norm;
    const double det = sn.determinant().real();
    const cplx i{0.0, 1.0};

    if (std::abs(det) <= 1e-10) {
        return Eigen::Matrix3cd::Identity() - sn2 + std::cos(t) * sn2 + i * std::sin(t) * sn;
    }

    const double arg = std::clamp(1.5 * std::sqrt(3.0) * det, -1.0, 1.0);
    const double big_phi = (std::acos(arg) - pi / 2.0) / 3.0;
    Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
    for (int k = 0; k < 3; ++k) {
        const double x = big_phi + 2.0 * pi * k / 3.0;
        const double eig = 2.0 / std::sqrt(3.0) * std::sin(x);
        const double denom = 1.0 - 2.0 * std::cos(2.0 * x);
        if (std::abs(denom) < 1e-12) {
            throw NumericalError("su3_exponential: degenerate generator spectrum", denom);
        }
        const Eigen::Matrix3cd bracket = sn2 + eig * sn
            - (1.0 + 2.0 * std::cos(2.0 * x)) / 3.0 * Eigen::Matrix3cd::Identity();
        out += bracket * (std::exp(i * t * eig) / denom);
    }
    return out;
}

double vacuum_displacement_moment(double alpha) { return std::exp(-0.5 * alpha * alpha); }

EffectiveBlocks effective_blocks(const ModelParams& p) {
    model::validate(p);
    const double r2 = p.lambda * p.lambda / (p.omega * p.omega);
    const double cos2 = std::exp(-2.0 * r2);   // <0|cos 2theta|0>
    const double cos1 = std::exp(-0.5 * r2);   // <0|cos theta|0>
    const double shift = p.lambda * p.lambda / p.omega;
    const double a = 2.0 * p.v - p.delta;

    EffectiveBlocks b;
    b.e0 = a / 4.0 * (1.0 - cos2) - shift;
    b.h = -a / 8.0 * (1.0 - cos2) - shift / 2.0;
    b.l = a / 8.0 * (3.0 + cos2) - shift / 2.0;
    b.w = -0.5 * p.delta * cos1;
    return b;
}

HermitianMatrix effective_hamiltonian(const ModelParams& p) {
    const auto b = effective_blocks(p);
    Eigen::Matrix3d m;
    m << b.e0, 0.0,       0.0,
         0.0,  b.l + b.w, b.h,
         0.0,  b.h,       b.l - b.w;
    return HermitianMatrix::from_real(m);
}

HermitianMatrix EffectiveSpectrum::hamiltonian() const {
    return HermitianMatrix::from_real(Eigen::Vector3d(e0, e_minus, e_plus).asDiagonal().toDenseMatrix());
}

HermitianMatrix EffectiveSpectrum::coupling() const {
    Eigen::Matrix3d m;
    m << 0, p, q,
         p, 0, 0,
         q, 0, 0;
    return HermitianMatrix::from_real(m);
}

EffectiveSpectrum diagonalize_effective(const ModelParams& params) {
    const auto b = effective_blocks(params);
    EffectiveSpectrum s;
    const double r = std::hypot(b.w, b.h);
    s.e0 = b.e0;
    s.e_minus = b.l - r;
    s.e_plus = b.l + r;
    // First-quadrant branch: lambda -> 0 gives phi = 0, w = 0 gives pi/2 exactly.
    s.phi = std::atan2(std::abs(b.h), std::abs(b.w));
    s.p = std::sin(pi / 4.0 - s.phi / 2.0);
    s.q = std::sin(pi / 4.0 + s.phi / 2.0);

    const double c = std::cos(s.phi / 2.0);
    const double sn = std::sin(s.phi / 2.0);
    s.basis << 1.0, 0.0, 0.0,
               0.0, -sn, c,
               0.0, c,   sn;
    return s;
}

PqAsymptotic pq_asymptotic(const ModelParams& p) {
    model::validate(p);
    if (p.lambda == 0.0) throw ParameterError("pq_asymptotic: singular at lambda = 0");
    const double l2 = p.lambda * p.lambda;
    PqAsymptotic out;
    out.p_sq = p.omega * p.omega * p.delta * p.delta * std::exp(-l2 / (p.omega * p.omega)) / (4.0 * l2 * l2);
    out.q_sq = 1.0 - out.p_sq;
    return out;
}

} // namespace rcpt::mapping
