// oracles.cpp — Reference computations (see header).

#include "rcpt/validation/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace rcpt::oracle {

using std::numbers::pi;

MatrixXcd expm(const MatrixXcd& m) { return m.exp(); }

double bose(double w, double temperature) { return 1.0 / (std::exp(w / temperature) - 1.0); }

double brownian_j(const ModelParams& p, double w) {
    const double num = 4.0 * p.gamma * p.omega * p.omega * p.lambda * p.lambda * w;
    const double a = w * w - p.omega * p.omega;
    const double b = 2.0 * pi * p.gamma * p.omega * w;
    return num / (a * a + b * b);
}

double ohmic_j(const ModelParams& p, double w) { return p.gamma * w * std::exp(-w / p.cutoff); }

double effective_ohmic_j(const ModelParams& p, double w) {
    return std::pow(2.0 * p.lambda / p.omega, 2) * ohmic_j(p, w);
}

double half_fourier(const std::function<double(double)>& j, double temperature, double w) {
    if (w == 0.0) {
        const double eps = 1e-7 * temperature;
        return pi * j(eps) * (bose(eps, temperature) + 1.0) - pi * j(eps) / 2.0;
    }
    if (w > 0.0) return pi * j(w) * (bose(w, temperature) + 1.0);
    return pi * j(-w) * bose(-w, temperature);
}

Eigen::Matrix3d polaron_vacuum_hamiltonian(const ModelParams& p, int fock) {
    const int n = fock;
    MatrixXcd a = MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    Eigen::Matrix3cd hs = Eigen::Matrix3cd::Zero();
    hs(1, 1) = p.v - p.delta;
    hs(2, 2) = p.v;
    Eigen::Matrix3cd s = Eigen::Matrix3cd::Zero();
    s(0, 1) = s(1, 0) = s(0, 2) = s(2, 0) = 1.0 / std::sqrt(2.0);

    // System-major here (index = 3-level index * n + Fock index).
    const MatrixXcd in = MatrixXcd::Identity(n, n);
    const MatrixXcd x = a + a.adjoint();
    const MatrixXcd big_h = Eigen::kroneckerProduct(hs, in).eval() + p.lambda * Eigen::kroneckerProduct(s, x).eval()
                          + p.omega * Eigen::kroneckerProduct(Eigen::Matrix3cd::Identity(), (a.adjoint() * a).eval()).eval();
    const MatrixXcd gen = (p.lambda / p.omega) * Eigen::kroneckerProduct(s, (a.adjoint() - a).eval()).eval();
    const MatrixXcd u = gen.exp();
    const MatrixXcd t = u * big_h * u.adjoint();
    Eigen::Matrix3d out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = t(i * n, j * n).real();
    return out;
}

Spectrum spectrum_of(const Eigen::Matrix3d& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(h);
    const Eigen::Vector3d e = es.eigenvalues();
    const Eigen::Matrix3d v = es.eigenvectors();
    int i0 = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(v(0, k)) > std::abs(v(0, i0))) i0 = k;
    std::vector<int> rest;
    for (int k = 0; k < 3; ++k)
        if (k != i0) rest.push_back(k);
    if (e(rest[0]) > e(rest[1])) std::swap(rest[0], rest[1]);

    Eigen::Matrix3d s = Eigen::Matrix3d::Zero();
    s(0, 1) = s(1, 0) = s(0, 2) = s(2, 0) = 1.0 / std::sqrt(2.0);
    Spectrum out;
    out.energies << e(i0), e(rest[0]), e(rest[1]);
    out.p2 = std::pow(v.col(rest[0]).dot(s * v.col(i0)), 2);
    out.q2 = std::pow(v.col(rest[1]).dot(s * v.col(i0)), 2);
    return out;
}

Spectrum closed_form_labels(const Spectrum& s) {
    Spectrum out = s;
    std::swap(out.p2, out.q2);
    return out;
}

Rates golden_rates(const Spectrum& s, const ModelParams& p, bool cutoff) {
    ModelParams q = p;
    if (!cutoff) q.cutoff = std::numeric_limits<double>::infinity();
    const double ep = s.energies(2) - s.energies(0);
    const double em = s.energies(1) - s.energies(0);
    Rates r;
    r.up_plus = 2.0 * pi * effective_ohmic_j(q, ep) * bose(ep, p.temperature);
    r.up_minus = 2.0 * pi * effective_ohmic_j(q, em) * bose(em, p.temperature);
    r.down_plus = 2.0 * pi * effective_ohmic_j(q, ep) * (bose(ep, p.temperature) + 1.0);
    r.down_minus = 2.0 * pi * effective_ohmic_j(q, em) * (bose(em, p.temperature) + 1.0);
    return r;
}

std::pair<double, double> timescales(const Spectrum& s, const Rates& r) {
    using mp = boost::multiprecision::cpp_bin_float_50;
    // dP-/dt and dP+/dt with P0 = 1 - P- - P+ eliminated.
    const mp p2 = s.p2, q2 = s.q2;
    const mp m11 = -p2 * (mp(r.up_minus) + mp(r.down_minus));
    const mp m12 = -p2 * mp(r.up_minus);
    const mp m21 = -q2 * mp(r.up_plus);
    const mp m22 = -q2 * (mp(r.up_plus) + mp(r.down_plus));
    const mp tr = m11 + m22;
    const mp det = m11 * m22 - m12 * m21;
    const mp disc = sqrt(tr * tr - 4 * det);
    const mp fast = (tr - disc) / 2;
    const mp slow = (tr + disc) / 2;
    return {static_cast<double>(-1 / fast), static_cast<double>(-1 / slow)};
}

Eigen::VectorXd gibbs(const Eigen::VectorXd& energies, double temperature) {
    const double emin = energies.minCoeff();
    Eigen::VectorXd w(energies.size());
    for (Eigen::Index k = 0; k < energies.size(); ++k) w(k) = std::exp(-(energies(k) - emin) / temperature);
    return w / w.sum();
}

MatrixXcd redfield_elementwise(const Eigen::VectorXd& om, const MatrixXcd& s,
                               const std::function<double(double)>& gamma) {
    const Eigen::Index d = om.size();
    auto r = [&](Eigen::Index m, Eigen::Index n, Eigen::Index j, Eigen::Index l, double w) {
        return s(m, n) * s(j, l) * gamma(w);
    };
    auto idx = [d](Eigen::Index i, Eigen::Index j) { return i + j * d; };
    MatrixXcd g = MatrixXcd::Zero(d * d, d * d);
    const cplx im{0.0, 1.0};
    for (Eigen::Index m = 0; m < d; ++m)
        for (Eigen::Index n = 0; n < d; ++n) {
            const Eigen::Index row = idx(m, n);
            g(row, row) += -im * (om(m) - om(n));
            for (Eigen::Index j = 0; j < d; ++j)
                for (Eigen::Index l = 0; l < d; ++l) {
                    g(row, idx(l, n)) -= r(m, j, j, l, om(l) - om(j));
                    g(row, idx(m, j)) -= std::conj(r(n, l, l, j, om(j) - om(l)));
                    g(row, idx(j, l)) += r(l, n, m, j, om(j) - om(m)) + std::conj(r(j, m, n, l, om(l) - om(n)));
                }
        }
    return g;
}

std::vector<MatrixXcd> rk4(const MatrixXcd& g, const MatrixXcd& rho0, const std::vector<double>& times,
                           double max_step) {
    const Eigen::Index d = rho0.rows();
    VectorXcd x = Eigen::Map<const VectorXcd>(rho0.data(), d * d);
    std::vector<MatrixXcd> out;
    double t = 0.0;
    for (double target : times) {
        const int steps = std::max(1, static_cast<int>(std::ceil((target - t) / max_step)));
        const double h = (target - t) / steps;
        for (int k = 0; k < steps; ++k) {
            const VectorXcd k1 = g * x;
            const VectorXcd k2 = g * (x + 0.5 * h * k1);
            const VectorXcd k3 = g * (x + 0.5 * h * k2);
            const VectorXcd k4 = g * (x + h * k3);
            x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        t = target;
        out.push_back(Eigen::Map<const MatrixXcd>(x.data(), d, d));
    }
    return out;
}

} // namespace rcpt::oracle
