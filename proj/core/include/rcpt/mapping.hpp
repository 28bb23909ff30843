// mapping.hpp — Reaction-coordinate + polaron mapping of the three-level model
//
// After projecting the polaron-transformed RC onto its vacuum, the system
// Hamiltonian becomes
//
//        | E0   0     0   |
//   H =  | 0    l+w   h   |       (site basis)
//        | 0    h     l-w |
//
// and the residual bath couples through the unchanged S with the Ohmic
// spectral density (4 lambda^2 / Omega^2) Gamma w e^{-w/Lambda}.

#pragma once

#include <Eigen/Dense>

#include "rcpt/linalg.hpp"
#include "rcpt/model.hpp"

namespace rcpt::mapping {

using model::ModelParams;
using model::SpectralDensity;

// RC frequency and coupling from the first and third moments of a Brownian
// density on [0, w_max]:
//   lambda^2 = (1/Omega) int w J,   Omega^2 = int w^3 J / int w J.
// Recovers the nominal (lambda, Omega) only for narrow peaks (Gamma << 1);
// the w^3 moment grows linearly with w_max at finite width.
struct RcEstimate {
    double lambda{0.0};
    double omega{0.0};
    bool degenerate{false};     // zero spectral weight; omega is meaningless
    double first_moment{0.0};
    double third_moment{0.0};
    double quadrature_error{0.0};
};

RcEstimate rc_parameters(const SpectralDensity& j, double w_max);

// exp(i theta S) for traceless Hermitian 3x3 S via the closed-form SU(3) sum.
// S is rescaled to tr S^2 = 2 internally. For det S = 0 this is
// I - S^2 + cos(theta) S^2 + i sin(theta) S (with tr S^2 = 2).
Eigen::Matrix3cd su3_exponential(const HermitianMatrix& s, double theta);

// <0| exp(alpha (a^dagger - a)) |0> = exp(-alpha^2 / 2)
double vacuum_displacement_moment(double alpha);

struct EffectiveBlocks {
    double e0{0.0};   // ground level
    double l{0.0};    // excited-manifold midpoint
    double w{0.0};    // suppressed half-splitting, <= 0
    double h{0.0};    // bath-induced tunneling, <= 0
};

EffectiveBlocks effective_blocks(const ModelParams& p);

HermitianMatrix effective_hamiltonian(const ModelParams& p);

// Spectrum of the effective Hamiltonian in the (E0, E-, E+) labelling with
// tan(phi) = h / w, phi in [0, pi/2], and
//   |E0> = (1, 0, 0), |E-> = (0, -sin(phi/2), cos(phi/2)), |E+> = (0, cos(phi/2), sin(phi/2)).
// basis holds these as columns. In this frame S becomes [[0,p,q],[p,0,0],[q,0,0]]
// with p = sin(pi/4 - phi/2), q = sin(pi/4 + phi/2); p -> 0 at strong coupling.
//
// Note: for h, w <= 0 the column labelled |E+> is the eigenvector of l - r
// (r = sqrt(w^2 + h^2)), so basis * diag(e0, e_minus, e_plus) * basis^T equals
// the effective Hamiltonian with (w, h) -> (-w, -h). Energies are exact.
struct EffectiveSpectrum {
    double e0{0.0};
    double e_minus{0.0};
    double e_plus{0.0};
    double phi{0.0};
    double p{0.0};
    double q{0.0};
    Eigen::Matrix3d basis{Eigen::Matrix3d::Identity()};

    double p2() const { return p * p; }
    double q2() const { return q * q; }
    double bohr_plus() const { return e_plus - e0; }    // E_{+0}
    double bohr_minus() const { return e_minus - e0; }  // E_{-0}

    // diag(E0, E-, E+)
    HermitianMatrix hamiltonian() const;
    // [[0,p,q],[p,0,0],[q,0,0]]
    HermitianMatrix coupling() const;
};

EffectiveSpectrum diagonalize_effective(const ModelParams& p);

// Strong-coupling asymptote p^2 ~ Omega^2 Delta^2 e^{-lambda^2/Omega^2} / (4 lambda^4).
// lambda = 0 throws ParameterError.
struct PqAsymptotic {
    double p_sq{0.0};
    double q_sq{1.0};
};

PqAsymptotic pq_asymptotic(const ModelParams& p);

} // namespace rcpt::mapping
