// test_redfield.cpp — Rates, configurations and generator assembly.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rcpt/errors.hpp"
#include "rcpt/redfield.hpp"
#include "rcpt/validation/oracles.hpp"

using namespace rcpt;
using namespace rcpt::redfield;
using std::numbers::pi;

namespace {

ModelParams at_lambda(double lambda) {
    ModelParams p;
    p.lambda = lambda;
    return p;
}

MatrixXcd random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    MatrixXcd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(nd(rng), nd(rng));
    return 0.5 * (a + a.adjoint());
}

// Real eigenvalues (|Im| small) of a generator, sorted ascending.
std::vector<double> real_eigenvalues(const MatrixXcd& g, double imag_tol) {
    Eigen::ComplexEigenSolver<MatrixXcd> es(g, false);
    std::vector<double> out;
    for (const auto& l : es.eigenvalues())
        if (std::abs(l.imag()) < imag_tol) out.push_back(l.real());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_SUITE("redfield") {

TEST_CASE("half-Fourier rate") {
    ModelParams p = at_lambda(5.0);
    const auto oh = model::SpectralDensity::ohmic(p);
    for (double w : {0.1, 1.0, 3.0}) {
        CHECK(halffourier_rate(oh, 1.0, w) / halffourier_rate(oh, 1.0, -w)
              == doctest::Approx(std::exp(w)).epsilon(1e-12));
    }
    CHECK(halffourier_rate(oh, 1.0, 0.0) == doctest::Approx(pi * 0.05).epsilon(1e-14));
    CHECK(halffourier_rate(oh, 1.0, 0.0) == doctest::Approx(0.15708).epsilon(1e-5));
    // Continuity into the zero-frequency value from both sides.
    CHECK(halffourier_rate(oh, 1.0, 1e-9) == doctest::Approx(halffourier_rate(oh, 1.0, 0.0)).epsilon(1e-7));
    CHECK(halffourier_rate(oh, 1.0, -1e-9) == doctest::Approx(halffourier_rate(oh, 1.0, 0.0)).epsilon(1e-7));

    const auto eo = model::SpectralDensity::effective_ohmic(p);
    CHECK(halffourier_rate(eo, 1.0, 0.0) == doctest::Approx(pi * 0.05).epsilon(1e-14));
    const double w = 3.2992;
    const double direct = pi * 0.05 * w * std::exp(-w / 1000.0) * (1.0 / std::expm1(w) + 1.0);
    CHECK(halffourier_rate(eo, 1.0, w) == doctest::Approx(direct).epsilon(1e-14));
    CHECK(halffourier_rate(eo, 1.0, w) == doctest::Approx(0.537).epsilon(0.002));

    const auto br = model::SpectralDensity::brownian(p);
    CHECK(halffourier_rate(br, 2.0, 0.0) == doctest::Approx(pi * 2.0 * 4.0 * 0.05 * 25.0 / 100.0).epsilon(1e-14));

    for (double x : {-2.0, -0.3, 0.0, 0.4, 7.0}) {
        auto j = [&](double v) { return oracle::effective_ohmic_j(p, v); };
        CHECK(halffourier_rate(eo, 0.7, x) == doctest::Approx(oracle::half_fourier(j, 0.7, x)).epsilon(1e-6));
    }
}

TEST_CASE("EFFH configuration at weak coupling is the bare model") {
    SimulationConfig cfg;
    cfg.params = at_lambda(0.0);
    const auto sys = build_system(cfg);
    const auto h = sys.hamiltonian.entries().real();
    CHECK(h(0, 0) == 0.0);
    CHECK(h(1, 1) == doctest::Approx(0.99).epsilon(1e-15));
    CHECK(h(2, 2) == doctest::Approx(1.0).epsilon(1e-15));
    const auto s = sys.coupling.entries().real();
    CHECK(s(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(s(0, 2) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(sys.bath.kind == model::SpectralKind::EffectiveOhmic);
}

TEST_CASE("RC configuration assembly") {
    SimulationConfig cfg;
    cfg.method = Method::RC;
    cfg.rc_levels = 2;
    cfg.params = at_lambda(1.0);
    const auto sys = build_system(cfg);
    REQUIRE(sys.dim() == 6);
    const MatrixXcd h = sys.hamiltonian.entries();
    const MatrixXcd hs = model::bare_hamiltonian(cfg.params).entries();
    const MatrixXcd s = model::coupling_operator().entries();
    CHECK((h.block(0, 0, 3, 3) - hs).norm() < 1e-15);
    CHECK((h.block(0, 3, 3, 3) - 1.0 * s).norm() < 1e-15);
    CHECK((h.block(3, 3, 3, 3) - (hs + 10.0 * MatrixXcd::Identity(3, 3))).norm() < 1e-15);
    const MatrixXcd c = sys.coupling.entries();
    CHECK((c.block(0, 3, 3, 3) - MatrixXcd::Identity(3, 3)).norm() == 0.0);
    CHECK(c.block(0, 0, 3, 3).norm() == 0.0);
    CHECK(sys.bath.kind == model::SpectralKind::Ohmic);

    cfg.rc_levels = 1;
    CHECK_THROWS_AS(build_system(cfg), ParameterError);
}

TEST_CASE("configuration validation") {
    SimulationConfig cfg;
    cfg.initial_state(0, 0) = 0.5;
    CHECK_THROWS_AS(validate(cfg), ParameterError);
    cfg.initial_state = ground_state();
    cfg.initial_state(0, 1) = 0.1;
    CHECK_THROWS_AS(validate(cfg), ParameterError);
    cfg.initial_state = Eigen::Matrix3cd::Zero();
    cfg.initial_state(0, 0) = 1.5;
    cfg.initial_state(1, 1) = -0.5;
    CHECK_THROWS_AS(validate(cfg), ParameterError);
    cfg.initial_state = uniform_state();
    CHECK_NOTHROW(validate(cfg));
    CHECK_THROWS_AS(TimeGrid::log_spaced(0.0, 1.0, 10), ParameterError);
    CHECK_THROWS_AS(TimeGrid::log_spaced(1.0, 10.0, 1), ParameterError);
    const auto g = TimeGrid::log_spaced(1e-2, 1e7, 400);
    CHECK(g.times.size() == 400);
    CHECK(g.times.front() == 1e-2);
    CHECK(g.times.back() == 1e7);
    CHECK(method_from_string("rc") == Method::RC);
    CHECK_THROWS_AS(method_from_string("hem"), ParameterError);
}

TEST_CASE("generator equals the element-wise four-term sum") {
    std::mt19937_64 rng(5);
    for (int d : {2, 3, 4}) {
        const HermitianMatrix h(random_hermitian(d, rng));
        const HermitianMatrix s(random_hermitian(d, rng));
        ModelParams p;
        const auto j = model::SpectralDensity::ohmic(p);
        const double t = 0.8;
        const auto g = build_redfield_generator(h, s, j, t);
        const MatrixXcd se = g.frame.adjoint() * s.entries() * g.frame;
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h.entries());
        auto jo = [&](double w) { return oracle::ohmic_j(p, w); };
        const MatrixXcd ref = oracle::redfield_elementwise(es.eigenvalues(), se,
                                                           [&](double w) { return oracle::half_fourier(jo, t, w); });
        CAPTURE(d);
        CHECK((g.matrix - ref).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + ref.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("generator equals the element-wise sum for the three configurations") {
    for (auto m : {Method::UW, Method::EFFH, Method::RC}) {
        SimulationConfig cfg;
        cfg.method = m;
        cfg.rc_levels = 3;
        cfg.params = at_lambda(2.0);
        const auto sys = build_system(cfg);
        const auto g = build_redfield_generator(sys, 1.0);
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(sys.hamiltonian.entries());
        const MatrixXcd se = g.frame.adjoint() * sys.coupling.entries() * g.frame;
        auto rate = [&](double w) { return halffourier_rate(sys.bath, 1.0, w); };
        const MatrixXcd ref = oracle::redfield_elementwise(es.eigenvalues(), se, rate);
        CAPTURE(to_string(m));
        CHECK((g.matrix - ref).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + ref.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("no coupling: purely coherent generator") {
    const HermitianMatrix h = model::bare_hamiltonian(ModelParams{});
    const HermitianMatrix s(MatrixXcd::Zero(3, 3));
    const auto g = build_redfield_generator(h, s, model::SpectralDensity::ohmic(ModelParams{}), 1.0);
    for (int k = 0; k < 3; ++k) CHECK(g.matrix.row(k * 4).norm() == 0.0);
    MatrixXcd diag = g.matrix;
    diag.diagonal().setZero();
    CHECK(diag.norm() == 0.0);
    CHECK_THROWS_AS(build_redfield_generator(h, HermitianMatrix(MatrixXcd::Zero(2, 2)),
                                             model::SpectralDensity::ohmic(ModelParams{}), 1.0),
                    ParameterError);
}

TEST_CASE("two-level golden-rule oracle") {
    const double eps = 0.7, t = 0.9;
    MatrixXcd hq = MatrixXcd::Zero(2, 2);
    hq(1, 1) = eps;
    MatrixXcd sx = MatrixXcd::Zero(2, 2);
    sx(0, 1) = sx(1, 0) = 1.0;
    ModelParams p;
    const auto j = model::SpectralDensity::ohmic(p);
    const auto g = build_redfield_generator(HermitianMatrix(hq), HermitianMatrix(sx), j, t);
    // Hand-built rates: emission pi J (n + 1), absorption pi J n.
    const double jv = 0.05 * eps * std::exp(-eps / 1000.0);
    const double n = 1.0 / (std::exp(eps / t) - 1.0);
    const double expected = 2.0 * pi * jv * (n + 1.0) + 2.0 * pi * jv * n;
    // Population block (vec indices 0 and 3).
    Eigen::Matrix2cd pop;
    pop << g.matrix(0, 0), g.matrix(0, 3), g.matrix(3, 0), g.matrix(3, 3);
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(pop);
    const double relax = std::min(es.eigenvalues()(0).real(), es.eigenvalues()(1).real());
    CHECK(std::abs(-relax - expected) < 1e-10);
    CHECK(std::abs(g.matrix(0, 1)) + std::abs(g.matrix(0, 2)) < 1e-15);
}

TEST_CASE("generator invariants for every configuration") {
    for (double lambda : {0.1, 1.0, 5.0})
        for (auto m : {Method::UW, Method::EFFH, Method::RC}) {
            SimulationConfig cfg;
            cfg.method = m;
            cfg.rc_levels = 4;
            cfg.params = at_lambda(lambda);
            const auto g = build_redfield_generator(build_system(cfg), 1.0);
            const auto c = check_generator(g);
            CAPTURE(lambda);
            CAPTURE(to_string(m));
            CHECK(c.trace_error < 1e-10);
            CHECK(c.hermiticity_error < 1e-10);
            CHECK(c.max_real_eigenvalue < 1e-9);
        }
}

TEST_CASE("EFFH Redfield population eigenvalues match the analytic timescales") {
    const ModelParams p = at_lambda(5.0);
    SimulationConfig cfg;
    cfg.params = p;
    const auto g = build_redfield_generator(build_system(cfg), 1.0);
    const auto a = timescales::analyze(p);
    auto ev = real_eigenvalues(g.matrix, 1e-6);
    ev.erase(std::remove_if(ev.begin(), ev.end(), [](double x) { return std::abs(x) < 1e-12; }), ev.end());
    REQUIRE(ev.size() == 2);
    CHECK(-1.0 / ev[0] == doctest::Approx(a.full.tau1).epsilon(0.01));
    // Population-coherence terms dropped by the secular rates move the slow rate by a few percent.
    CHECK(-1.0 / ev[1] == doctest::Approx(*a.full.tau2).epsilon(0.05));
}

TEST_CASE("secular Lindblad generator") {
    for (double lambda : {0.3, 1.0, 5.0}) {
        const ModelParams p = at_lambda(lambda);
        const auto spec = mapping::diagonalize_effective(p);
        const auto rates = timescales::golden_rates(spec, p);
        const auto g = build_secular_lindblad_generator(spec, rates);
        REQUIRE(g.dim == 3);
        const auto c = check_generator(g);
        CHECK(c.trace_error < 1e-12);
        CHECK(c.hermiticity_error < 1e-12);

        Eigen::ComplexEigenSolver<MatrixXcd> es(g.matrix, false);
        int zeros = 0;
        for (const auto& l : es.eigenvalues()) zeros += std::abs(l) < 1e-10;
        CHECK(zeros == 1);

        // Embedding: the 2x2 rate-matrix eigenvalues sit in the 9x9 spectrum.
        const auto rm = timescales::rate_matrix(rates, spec);
        const Eigen::Vector2d rev = timescales::rate_matrix_eigenvalues(rm);
        for (int k = 0; k < 2; ++k) {
            double best = 1e300;
            for (const auto& l : es.eigenvalues()) best = std::min(best, std::abs(l - cplx(rev(k))));
            CHECK(best < 1e-9 * std::max(1.0, std::abs(rev(k))));
        }

        const auto ss = steady_state(g);
        const Eigen::VectorXd w = oracle::gibbs(Eigen::Vector3d(spec.e0, spec.e_minus, spec.e_plus), 1.0);
        for (int k = 0; k < 3; ++k) CHECK(ss.rho(k, k).real() == doctest::Approx(w(k)).epsilon(1e-8));
        CHECK(ss.residual < 1e-10);
    }
}

}
