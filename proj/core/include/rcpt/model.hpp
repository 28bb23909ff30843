// model.hpp — Three-level system parameters, bare Hamiltonian, coupling
// operator and bath spectral densities.
//
// Units: hbar = k_B = 1. Site basis ordering is (|1>, |2>, |3>) =
// (ground, first excited, second excited).

#pragma once

#include <string>
#include <vector>

#include "rcpt/linalg.hpp"

namespace rcpt::model {

struct ModelParams {
    double v{1.0};            // |1> <-> |3> splitting
    double delta{0.01};       // excited-state splitting, |2> sits at v - delta
    double lambda{1.0};       // reaction-coordinate coupling
    double omega{10.0};       // reaction-coordinate frequency
    double gamma{0.05};       // Brownian width / residual Ohmic prefactor
    double cutoff{1000.0};    // exponential cutoff of the Ohmic baths (may be +inf)
    double temperature{1.0};

    bool operator==(const ModelParams&) const = default;
};

// Hard constraints throw ParameterError. Regime advisories come back as
// human-readable warnings (currently: omega < 5 max(v, lambda)).
std::vector<std::string> validate(const ModelParams& p);

// diag(0, v - delta, v)
HermitianMatrix bare_hamiltonian(const ModelParams& p);

// S = (|1><2| + |1><3|)/sqrt(2) + h.c.; eigenvalues {-1, 0, 1}, det S = 0.
HermitianMatrix coupling_operator();

enum class SpectralKind { Brownian, Ohmic, EffectiveOhmic };

std::string to_string(SpectralKind kind);

struct SpectralDensity {
    SpectralKind kind{SpectralKind::Ohmic};
    double lambda{0.0};
    double omega{1.0};
    double gamma{0.0};
    double cutoff{0.0};

    static SpectralDensity brownian(const ModelParams& p);
    static SpectralDensity ohmic(const ModelParams& p);
    static SpectralDensity effective_ohmic(const ModelParams& p);

    // J(w) for w >= 0; negative w throws ParameterError.
    double value(double w) const;

    // dJ/dw at w = 0+, used for the zero-frequency rate limit.
    double slope_at_zero() const;
};

inline double spectral_value(const SpectralDensity& j, double w) { return j.value(w); }

} // namespace rcpt::model
