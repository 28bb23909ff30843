// test_mapping.cpp — Effective Hamiltonian, its spectrum, SU(3) exponential,
// displacement moments and RC extraction.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rcpt/errors.hpp"
#include "rcpt/mapping.hpp"
#include "rcpt/validation/oracles.hpp"

using namespace rcpt;
using namespace rcpt::mapping;
using std::numbers::pi;

namespace {

ModelParams at_lambda(double lambda) {
    ModelParams p;
    p.lambda = lambda;
    return p;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

TEST_SUITE("mapping") {

TEST_CASE("weak-coupling blocks reduce to the bare model") {
    const auto b = effective_blocks(at_lambda(0.0));
    CHECK(b.e0 == 0.0);
    CHECK(b.h == 0.0);
    CHECK(b.w == -0.005);
    CHECK(b.l == doctest::Approx(0.995).epsilon(1e-15));
    const auto h = effective_hamiltonian(at_lambda(0.0)).entries();
    const auto h0 = model::bare_hamiltonian(at_lambda(0.0)).entries();
    CHECK((h - h0).cwiseAbs().maxCoeff() <= 4 * std::numeric_limits<double>::epsilon());
}

TEST_CASE("blocks at lambda = 5") {
    const auto b = effective_blocks(at_lambda(5.0));
    CHECK(b.e0 == doctest::Approx(-2.3042).epsilon(1e-4));
    CHECK(b.l == doctest::Approx(-0.3529).epsilon(1e-4));
    CHECK(b.w == doctest::Approx(-0.0044125).epsilon(1e-4));
    CHECK(b.h == doctest::Approx(-1.3479).epsilon(1e-4));
    CHECK(std::abs(b.h / -1.25 - 1.0) < 0.08);
}

TEST_CASE("h and w are non-positive across a sweep") {
    for (double delta : {0.001, 0.01, 0.3, 0.9})
        for (double lambda = 0.0; lambda <= 20.0; lambda += 0.25) {
            ModelParams p = at_lambda(lambda);
            p.delta = delta;
            const auto b = effective_blocks(p);
            CHECK(b.h <= 0.0);
            CHECK(b.w <= 0.0);
        }
}

TEST_CASE("effective Hamiltonian equals the vacuum projection of the polaron-transformed RC model") {
    for (double lambda : {0.0, 0.5, 2.0, 5.0, 10.0}) {
        for (double delta : {0.01, 0.4}) {
            ModelParams p = at_lambda(lambda);
            p.delta = delta;
            const Eigen::Matrix3d ref = oracle::polaron_vacuum_hamiltonian(p, 60);
            const Eigen::Matrix3d got = effective_hamiltonian(p).entries().real();
            CAPTURE(lambda);
            CHECK((ref - got).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("spectrum against a dense eigensolver") {
    for (double lambda : {0.0, 0.3, 1.0, 3.0, 5.0, 10.0}) {
        const ModelParams p = at_lambda(lambda);
        const auto s = diagonalize_effective(p);
        const auto ref = oracle::spectrum_of(effective_hamiltonian(p).entries().real());
        CAPTURE(lambda);
        CHECK(std::abs(s.e0 - ref.energies(0)) < 1e-12);
        CHECK(std::abs(s.e_minus - ref.energies(1)) < 1e-12);
        CHECK(std::abs(s.e_plus - ref.energies(2)) < 1e-12);
        // p is the overlap of the upper eigenvector, q that of the lower one.
        CHECK(s.p2() == doctest::Approx(ref.q2).epsilon(1e-8));
        CHECK(s.q2() == doctest::Approx(ref.p2).epsilon(1e-12));
        CHECK(std::abs(s.p2() + s.q2() - 1.0) < 1e-14);
        CHECK(s.e_plus >= s.e_minus);
        const auto b = effective_blocks(p);
        CHECK(s.e_plus - s.e_minus == doctest::Approx(2.0 * std::hypot(b.w, b.h)).epsilon(1e-14));
    }
    const auto s5 = diagonalize_effective(at_lambda(5.0));
    CHECK(s5.e0 == doctest::Approx(-2.3042).epsilon(1e-4));
    CHECK(s5.e_minus == doctest::Approx(-1.7008).epsilon(1e-4));
    CHECK(s5.e_plus == doctest::Approx(0.9950).epsilon(1e-4));
    CHECK(s5.p2() == doctest::Approx(2.7e-6).epsilon(0.05));
    CHECK(s5.q2() == doctest::Approx(1.0 - 2.7e-6).epsilon(1e-7));
}

TEST_CASE("basis P: orthogonality, transformed coupling and labelling") {
    for (double lambda : {0.0, 0.7, 5.0}) {
        const ModelParams p = at_lambda(lambda);
        const auto s = diagonalize_effective(p);
        const Eigen::Matrix3d& pm = s.basis;
        CHECK((pm.transpose() * pm - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(pm(1, 2) >= 0.0);  // |E+> second component
        const Eigen::Matrix3d sp = pm.transpose() * model::coupling_operator().entries().real() * pm;
        CHECK((sp - s.coupling().entries().real()).cwiseAbs().maxCoeff() < 1e-12);

        // The eigenvector formulas reproduce the effective Hamiltonian with the
        // signs of w and h reversed (the E-/E+ columns carry swapped eigenvalues
        // for h, w <= 0); energies are unaffected.
        const auto b = effective_blocks(p);
        Eigen::Matrix3d flipped;
        flipped << b.e0, 0, 0, 0, b.l - b.w, -b.h, 0, -b.h, b.l + b.w;
        const Eigen::Matrix3d rebuilt = pm * Eigen::Vector3d(s.e0, s.e_minus, s.e_plus).asDiagonal() * pm.transpose();
        CHECK((rebuilt - flipped).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("weak and strong coupling limits of p and q") {
    const auto s0 = diagonalize_effective(at_lambda(0.0));
    CHECK(s0.phi == 0.0);
    CHECK(s0.p == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s0.q == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    double prev = 1.0;
    for (double lambda = 0.5; lambda <= 10.0; lambda += 0.25) {
        const double p2 = diagonalize_effective(at_lambda(lambda)).p2();
        CHECK(p2 < prev);
        prev = p2;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("energy trends over lambda in [0, 10]") {
    double e0 = 1e9, em = 1e9, ep_min = 1e9, ep_max = -1e9;
    for (double lambda = 0.0; lambda <= 10.0 + 1e-12; lambda += 0.1) {
        const auto s = diagonalize_effective(at_lambda(lambda));
        CHECK(s.e0 <= e0 + 1e-15);
        CHECK(s.e_minus <= em + 1e-15);
        e0 = s.e0;
        em = s.e_minus;
        ep_min = std::min(ep_min, s.e_plus);
        ep_max = std::max(ep_max, s.e_plus);
    }
    CHECK((ep_max - ep_min) / std::abs(ep_max) < 0.10);
}

TEST_CASE("strong-coupling asymptote of p^2") {
    const auto a = pq_asymptotic(at_lambda(5.0));
    const double direct = 100.0 * 1e-4 * std::exp(-0.25) / (4.0 * 625.0);
    CHECK(a.p_sq == doctest::Approx(direct).epsilon(1e-14));
    CHECK(a.p_sq == doctest::Approx(3.115e-6).epsilon(1e-3));
    CHECK(a.p_sq + a.q_sq == 1.0);
    const double exact = diagonalize_effective(at_lambda(5.0)).p2();
    CHECK(std::abs(a.p_sq - exact) / exact < 0.2);
    CHECK_THROWS_AS(pq_asymptotic(at_lambda(0.0)), ParameterError);
}

TEST_CASE("SU(3) exponential of the coupling operator") {
    const HermitianMatrix s = model::coupling_operator();
    const Eigen::Matrix3cd sm = s.entries();
    const Eigen::Matrix3cd id = Eigen::Matrix3cd::Identity();
    CHECK((su3_exponential(s, 0.0) - id).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((su3_exponential(s, pi) - (id - 2.0 * sm * sm)).cwiseAbs().maxCoeff() < 1e-15);
    const MatrixXcd ref07 = oracle::expm(cplx(0.0, 0.7) * sm);
    CHECK((su3_exponential(s, 0.7) - ref07).cwiseAbs().maxCoeff() < 1e-12);

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> th(-5.0, 5.0);
    for (int k = 0; k < 100; ++k) {
        const double theta = th(rng);
        const Eigen::Matrix3cd u = su3_exponential(s, theta);
        const MatrixXcd ref = oracle::expm(cplx(0.0, theta) * sm);
        CHECK((u - ref).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((u * u.adjoint() - id).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("SU(3) exponential, general branch and input checks") {
    // Traceless Hermitian with non-zero determinant (Gell-Mann lambda_8 plus lambda_1 mix).
    Eigen::Matrix3cd g;
    g << 1.0, cplx(0.3, 0.2), 0.1, cplx(0.3, -0.2), 0.5, cplx(0.0, 0.4), 0.1, cplx(0.0, -0.4), -1.5;
    const HermitianMatrix gh(g);
    for (double theta : {-2.0, 0.3, 4.1}) {
        const MatrixXcd ref = oracle::expm(cplx(0.0, theta) * g);
        CHECK((su3_exponential(gh, theta) - ref).cwiseAbs().maxCoeff() < 1e-10);
    }
    Eigen::Matrix3cd bad = Eigen::Matrix3cd::Identity();
    CHECK_THROWS_AS(su3_exponential(HermitianMatrix(bad), 1.0), ParameterError);
    CHECK_THROWS_AS(su3_exponential(HermitianMatrix(MatrixXcd::Identity(2, 2)), 1.0), ParameterError);
}

TEST_CASE("vacuum displacement moment against a truncated Fock space") {
    const int n = 60;
    MatrixXcd a = MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
    CHECK(vacuum_displacement_moment(0.0) == 1.0);
    for (double alpha : {0.25, 0.5, 1.0, 2.0}) {
        const MatrixXcd d = oracle::expm(alpha * (a.adjoint() - a));
        CHECK(std::abs(vacuum_displacement_moment(alpha) - d(0, 0).real()) < 1e-8);
    }
    CHECK(vacuum_displacement_moment(1.0) == doctest::Approx(0.60653066).epsilon(1e-8));
    CHECK(vacuum_displacement_moment(2.0) == doctest::Approx(0.13533528).epsilon(1e-8));
}

TEST_CASE("RC parameters from Brownian moments") {
    ModelParams p;
    p.lambda = 1.0;
    p.gamma = 0.001;
    const auto j = model::SpectralDensity::brownian(p);
    const auto est = rc_parameters(j, 100.0);
    CHECK(!est.degenerate);
    CHECK(std::abs(est.lambda - 1.0) < 0.01);

    // Composite Simpson on a fine grid as the moment oracle.
    const double m1 = simpson([&](double w) { return w * j.value(w); }, 0.0, 100.0, 2'000'000);
    const double m3 = simpson([&](double w) { return w * w * w * j.value(w); }, 0.0, 100.0, 2'000'000);
    CHECK(est.first_moment == doctest::Approx(m1).epsilon(1e-7));
    CHECK(est.third_moment == doctest::Approx(m3).epsilon(1e-7));
    CHECK(est.omega == doctest::Approx(std::sqrt(m3 / m1)).epsilon(1e-7));
    MESSAGE("narrow Brownian: Omega_est = ", est.omega, " lambda_est = ", est.lambda);

    p.gamma = 0.05;
    const auto wide = rc_parameters(model::SpectralDensity::brownian(p), 100.0);
    MESSAGE("Gamma = 0.05: Omega_est = ", wide.omega, " (nominal 10)");
    CHECK(wide.omega > 10.0);

    p.lambda = 0.0;
    CHECK(rc_parameters(model::SpectralDensity::brownian(p), 100.0).degenerate);
    CHECK_THROWS_AS(rc_parameters(model::SpectralDensity::ohmic(p), 100.0), ParameterError);
    CHECK_THROWS_AS(rc_parameters(model::SpectralDensity::brownian(at_lambda(1.0)), 50.0), ParameterError);
}

}
