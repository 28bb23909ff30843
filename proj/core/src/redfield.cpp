// redfield.cpp — System construction and generator assembly.

#include "rcpt/redfield.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "rcpt/errors.hpp"

namespace rcpt::redfield {

using std::numbers::pi;

std::string to_string(Method m) {
    switch (m) {
    case Method::UW: return "uw";
    case Method::RC: return "rc";
    case Method::EFFH: return "effh";
    }
    return "?";
}

Method method_from_string(const std::string& s) {
    if (s == "uw") return Method::UW;
    if (s == "rc") return Method::RC;
    if (s == "effh") return Method::EFFH;
    throw ParameterError("unknown method '" + s + "' (expected uw, rc or effh)");
}

TimeGrid TimeGrid::log_spaced(double t_min, double t_max, int points) {
    if (!(t_min > 0.0) || !(t_max > t_min) || !std::isfinite(t_max))
        throw ParameterError("time grid needs 0 < t_min < t_max < inf");
    if (points < 2) throw ParameterError("time grid needs at least 2 points");
    TimeGrid g;
    g.times.resize(static_cast<std::size_t>(points));
    const double a = std::log(t_min), b = std::log(t_max);
    for (int k = 0; k < points; ++k)
        g.times[static_cast<std::size_t>(k)] = std::exp(a + (b - a) * k / (points - 1));
    g.times.front() = t_min;
    g.times.back() = t_max;
    return g;
}

void validate(const SimulationConfig& cfg) {
    model::validate(cfg.params);
    if (cfg.method == Method::RC && cfg.rc_levels < 2)
        throw ParameterError("rc_levels must be at least 2");
    const auto& r = cfg.initial_state;
    if (!r.allFinite()) throw ParameterError("initial state has non-finite entries");
    if (hermiticity_error(r) > 1e-12) throw ParameterError("initial state is not Hermitian");
    if (std::abs(r.trace() - cplx(1.0)) > 1e-12) throw ParameterError("initial state trace is not 1");
    if (min_eigenvalue(r) < -1e-12) throw ParameterError("initial state is not positive semidefinite");
    if (cfg.grid.times.empty()) throw ParameterError("empty time grid");
    double prev = 0.0;
    for (double t : cfg.grid.times) {
        if (!(t >= prev) || !std::isfinite(t)) throw ParameterError("time grid must be finite, non-negative and sorted");
        prev = t;
    }
}

Eigen::Matrix3cd uniform_state() { return Eigen::Matrix3cd::Identity() / 3.0; }

Eigen::Matrix3cd ground_state() {
    Eigen::Matrix3cd r = Eigen::Matrix3cd::Zero();
    r(0, 0) = 1.0;
    return r;
}

double halffourier_rate(const SpectralDensity& j, double temperature, double w) {
    if (w > 0.0) return pi * j.value(w) * (timescales::bose_einstein(w, temperature) + 1.0);
    if (w < 0.0) return pi * j.value(-w) * timescales::bose_einstein(-w, temperature);
    return pi * temperature * j.slope_at_zero();
}

MatrixXcd OpenSystem::embed(const Eigen::Matrix3cd& site_state, double temperature) const {
    switch (method) {
    case Method::UW: return site_state;
    case Method::EFFH: {
        const Eigen::Matrix3cd m = site_map.cast<cplx>();
        return m.adjoint() * site_state * m;
    }
    case Method::RC: {
        // Thermal RC with the system in the requested state.
        Eigen::VectorXd w(rc_levels);
        for (Eigen::Index n = 0; n < rc_levels; ++n)
            w(n) = std::exp(-rc_omega * static_cast<double>(n) / temperature);
        w /= w.sum();
        return kron(w.cast<cplx>().asDiagonal().toDenseMatrix(), site_state);
    }
    }
    throw ParameterError("unknown method");
}

Eigen::Matrix3cd OpenSystem::to_site(const MatrixXcd& state) const {
    MatrixXcd r = method == Method::RC ? trace_out_outer(state, rc_levels, 3) : state;
    if (r.rows() != 3) throw ParameterError("state has wrong dimension for this configuration");
    const Eigen::Matrix3cd m = site_map.cast<cplx>();
    return m * r * m.adjoint();
}

OpenSystem build_system(const SimulationConfig& cfg) {
    validate(cfg);
    const auto& p = cfg.params;
    OpenSystem sys;
    sys.method = cfg.method;
    switch (cfg.method) {
    case Method::UW:
        sys.hamiltonian = model::bare_hamiltonian(p);
        sys.coupling = model::coupling_operator();
        sys.bath = SpectralDensity::brownian(p);
        break;
    case Method::EFFH: {
        const auto spec = mapping::diagonalize_effective(p);
        sys.hamiltonian = spec.hamiltonian();
        sys.coupling = spec.coupling();
        sys.bath = SpectralDensity::effective_ohmic(p);
        sys.site_map = spec.basis;
        break;
    }
    case Method::RC: {
        const Eigen::Index n = cfg.rc_levels;
        const MatrixXd a = annihilation(n);
        const MatrixXcd x = (a + a.transpose()).cast<cplx>();
        const MatrixXcd num = (a.transpose() * a).cast<cplx>();
        const MatrixXcd i3 = MatrixXcd::Identity(3, 3);
        const MatrixXcd in = MatrixXcd::Identity(n, n);
        const MatrixXcd hs = model::bare_hamiltonian(p).entries();
        const MatrixXcd s = model::coupling_operator().entries();
        MatrixXcd h = kron(in, hs) + p.lambda * kron(x, s) + p.omega * kron(num, i3);
        sys.hamiltonian = HermitianMatrix(0.5 * (h + h.adjoint()));
        sys.coupling = HermitianMatrix(kron(x, i3));
        sys.bath = SpectralDensity::ohmic(p);
        sys.rc_levels = n;
        sys.rc_omega = p.omega;
        break;
    }
    }
    return sys;
}

MatrixXcd Generator::to_frame(const MatrixXcd& rho) const { return frame.adjoint() * rho * frame; }
MatrixXcd Generator::from_frame(const MatrixXcd& rho) const { return frame * rho * frame.adjoint(); }

namespace {

double round_bohr(double w) { return std::round(w * 1e12) * 1e-12; }

// Superoperator of rho -> A rho B.
MatrixXcd sandwich(const MatrixXcd& a, const MatrixXcd& b) { return kron(b.transpose(), a); }

} // namespace

Generator build_redfield_generator(const HermitianMatrix& h, const HermitianMatrix& s,
                                   const SpectralDensity& j, double temperature) {
    if (h.dim() != s.dim()) throw ParameterError("Hamiltonian and coupling dimensions differ");
    const Eigen::Index d = h.dim();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h.entries());
    if (es.info() != Eigen::Success) throw NumericalError("Hamiltonian diagonalization failed", 0.0);
    const Eigen::VectorXd w = es.eigenvalues();
    const MatrixXcd u = es.eigenvectors();
    const MatrixXcd se = u.adjoint() * s.entries() * u;

    MatrixXcd lam(d, d);
    for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index n = 0; n < d; ++n)
            lam(m, n) = se(m, n) * halffourier_rate(j, temperature, round_bohr(w(n) - w(m)));

    const MatrixXcd id = MatrixXcd::Identity(d, d);
    const MatrixXcd hd = w.cast<cplx>().asDiagonal().toDenseMatrix();
    const MatrixXcd lad = lam.adjoint();

    Generator g;
    g.dim = d;
    g.kind = GeneratorKind::Redfield;
    g.frame = u;
    // -i[H, rho] - S Lam rho + Lam rho S + S rho Lam^dag - rho Lam^dag S
    g.matrix = cplx(0, -1) * (sandwich(hd, id) - sandwich(id, hd))
             - sandwich(se * lam, id) + sandwich(lam, se) + sandwich(se, lad) - sandwich(id, lad * se);
    return g;
}

Generator build_redfield_generator(const OpenSystem& sys, double temperature) {
    return build_redfield_generator(sys.hamiltonian, sys.coupling, sys.bath, temperature);
}

Generator build_secular_lindblad_generator(const mapping::EffectiveSpectrum& spec,
                                           const timescales::RateSet& rates) {
    const Eigen::Index d = 3;
    const MatrixXcd id = MatrixXcd::Identity(d, d);
    const MatrixXcd h = spec.hamiltonian().entries();

    auto ket_bra = [](Eigen::Index i, Eigen::Index k, double amp) {
        MatrixXcd m = MatrixXcd::Zero(3, 3);
        m(i, k) = amp;
        return m;
    };
    struct Jump { MatrixXcd l; double rate; };
    const Jump jumps[] = {
        {ket_bra(2, 0, spec.q), rates.gamma_up_plus},
        {ket_bra(1, 0, spec.p), rates.gamma_up_minus},
        {ket_bra(0, 2, spec.q), rates.gamma_down_plus},
        {ket_bra(0, 1, spec.p), rates.gamma_down_minus},
    };

    Generator g;
    g.dim = d;
    g.kind = GeneratorKind::SecularLindblad;
    g.frame = id;
    g.matrix = cplx(0, -1) * (sandwich(h, id) - sandwich(id, h));
    for (const auto& jmp : jumps) {
        const MatrixXcd ll = jmp.l.adjoint() * jmp.l;
        g.matrix += jmp.rate * (sandwich(jmp.l, jmp.l.adjoint()) - 0.5 * sandwich(ll, id) - 0.5 * sandwich(id, ll));
    }
    return g;
}

GeneratorCheck check_generator(const Generator& g, int probes, unsigned seed) {
    GeneratorCheck c;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    const Eigen::Index d = g.dim;
    for (int k = 0; k < probes; ++k) {
        MatrixXcd a(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(nd(rng), nd(rng));
        MatrixXcd rho = a * a.adjoint();
        rho /= rho.trace();
        const MatrixXcd out = unvec(g.matrix * vec(rho), d);
        c.trace_error = std::max(c.trace_error, std::abs(out.trace()));
        c.hermiticity_error = std::max(c.hermiticity_error, hermiticity_error(out));
    }
    Eigen::ComplexEigenSolver<MatrixXcd> es(g.matrix, false);
    c.max_real_eigenvalue = es.eigenvalues().real().maxCoeff();
    return c;
}

} // namespace rcpt::redfield
