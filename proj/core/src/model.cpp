// model.cpp — Parameter validation, bare operators and spectral densities

#include "rcpt/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "rcpt/errors.hpp"

namespace rcpt::model {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ParameterError(msg);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

std::vector<std::string> validate(const ModelParams& p) {
    require(finite_positive(p.v), "v must be > 0");
    require(std::isfinite(p.delta) && p.delta > 0.0 && p.delta < p.v, "delta must satisfy 0 < delta < v");
    require(std::isfinite(p.lambda) && p.lambda >= 0.0, "lambda must be >= 0");
    require(finite_positive(p.omega), "omega must be > 0");
    require(finite_positive(p.gamma), "gamma must be > 0");
    require(!std::isnan(p.cutoff) && p.cutoff > 0.0, "cutoff must be > 0 (inf disables it)");
    require(finite_positive(p.temperature), "temperature must be > 0");

    std::vector<std::string> warnings;
    if (p.omega < 5.0 * std::max(p.v, p.lambda)) {
        std::ostringstream os;
        os << "omega = " << p.omega << " is not the dominant scale (< 5 max(v, lambda) = "
           << 5.0 * std::max(p.v, p.lambda) << "); ground-state RC truncation may be inaccurate";
        warnings.push_back(os.str());
    }
    return warnings;
}

HermitianMatrix bare_hamiltonian(const ModelParams& p) {
    validate(p);
    return HermitianMatrix::from_real(Eigen::Vector3d(0.0, p.v - p.delta, p.v).asDiagonal().toDenseMatrix());
}

HermitianMatrix coupling_operator() {
    const double s = 1.0 / std::numbers::sqrt2;
    Eigen::Matrix3d m;
    m << 0, s, s,
         s, 0, 0,
         s, 0, 0;
    return HermitianMatrix::from_real(m);
}

std::string to_string(SpectralKind kind) {
    switch (kind) {
    case SpectralKind::Brownian: return "brownian";
    case SpectralKind::Ohmic: return "ohmic";
    case SpectralKind::EffectiveOhmic: return "effective_ohmic";
    }
    return "unknown";
}

SpectralDensity SpectralDensity::brownian(const ModelParams& p) {
    return {SpectralKind::Brownian, p.lambda, p.omega, p.gamma, p.cutoff};
}

SpectralDensity SpectralDensity::ohmic(const ModelParams& p) {
    return {SpectralKind::Ohmic, p.lambda, p.omega, p.gamma, p.cutoff};
}

SpectralDensity SpectralDensity::effective_ohmic(const ModelParams& p) {
    return {SpectralKind::EffectiveOhmic, p.lambda, p.omega, p.gamma, p.cutoff};
}

double SpectralDensity::value(double w) const {
    if (!(w >= 0.0)) throw ParameterError("spectral density evaluated at negative frequency");
    switch (kind) {
    case SpectralKind::Brownian: {
        const double o2 = omega * omega;
        const double d = w * w - o2;
        const double width = 2.0 * std::numbers::pi * gamma * omega * w;
        return 4.0 * gamma * o2 * lambda * lambda * w / (d * d + width * width);
    }
    case SpectralKind::Ohmic:
        return gamma * w * std::exp(-w / cutoff);
    case SpectralKind::EffectiveOhmic:
        return 4.0 * lambda * lambda / (omega * omega) * gamma * w * std::exp(-w / cutoff);
    }
    return 0.0;
}

double SpectralDensity::slope_at_zero() const {
    switch (kind) {
    case SpectralKind::Brownian: return 4.0 * gamma * lambda * lambda / (omega * omega);
    case SpectralKind::Ohmic: return gamma;
    case SpectralKind::EffectiveOhmic: return 4.0 * lambda * lambda / (omega * omega) * gamma;
    }
    return 0.0;
}

} // namespace rcpt::model
