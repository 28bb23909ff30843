// test_linalg.cpp — Hermitian wrapper, Kronecker products, vec/unvec, partial trace.

#include <doctest.h>

#include <random>

#include "rcpt/errors.hpp"
#include "rcpt/linalg.hpp"

using namespace rcpt;

TEST_SUITE("linalg") {

TEST_CASE("HermitianMatrix accepts Hermitian input and rejects the rest") {
    MatrixXcd m(2, 2);
    m << 1.0, cplx(0.0, 2.0), cplx(0.0, -2.0), 3.0;
    CHECK_NOTHROW(HermitianMatrix{m});
    m(0, 1) = cplx(0.0, 2.0 + 1e-9);
    CHECK_THROWS_AS(HermitianMatrix{m}, ParameterError);
    CHECK_THROWS_AS(HermitianMatrix{MatrixXcd::Zero(2, 3)}, ParameterError);
}

TEST_CASE("vec follows column stacking and vec(AXB) = (B^T kron A) vec(X)") {
    std::mt19937 rng(1);
    std::normal_distribution<double> nd;
    auto rnd = [&](int r, int c) {
        MatrixXcd m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m(i, j) = cplx(nd(rng), nd(rng));
        return m;
    };
    const MatrixXcd a = rnd(3, 3), x = rnd(3, 3), b = rnd(3, 3);
    const VectorXcd v = vec(x);
    CHECK(v(1) == x(1, 0));
    CHECK(v(3) == x(0, 1));
    CHECK((unvec(v, 3) - x).norm() == 0.0);
    const VectorXcd lhs = vec(a * x * b);
    const VectorXcd rhs = kron(b.transpose(), a) * vec(x);
    CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("kron index convention") {
    MatrixXcd a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << 0, 1, 1, 0;
    const MatrixXcd k = kron(a, b);
    CHECK(k(0, 1) == cplx(1.0));
    CHECK(k(2, 3) == cplx(4.0));
    CHECK(k(1, 2) == cplx(2.0));
}

TEST_CASE("annihilation operator has sqrt(n) on the superdiagonal") {
    const MatrixXd a = annihilation(5);
    for (int n = 1; n < 5; ++n) CHECK(a(n - 1, n) == doctest::Approx(std::sqrt(n)));
    const MatrixXd x = a + a.transpose();
    for (int n = 0; n < 4; ++n) CHECK(x(n + 1, n) == doctest::Approx(std::sqrt(n + 1.0)));
    const MatrixXd num = a.transpose() * a;
    for (int n = 0; n < 5; ++n) CHECK(num(n, n) == doctest::Approx(n));
}

TEST_CASE("trace_out_outer of a product state returns the inner factor") {
    MatrixXcd outer = MatrixXcd::Zero(3, 3);
    outer.diagonal() << 0.5, 0.3, 0.2;
    MatrixXcd inner(2, 2);
    inner << 0.7, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3;
    const MatrixXcd r = trace_out_outer(kron(outer, inner), 3, 2);
    CHECK((r - inner).norm() < 1e-15);
}

TEST_CASE("min_eigenvalue uses the Hermitian part") {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -0.25;
    CHECK(min_eigenvalue(m) == doctest::Approx(-0.25));
}

}
