// linalg.hpp — Small dense helpers: Hermitian wrapper, Kronecker products,
// column-stacking vectorization and partial traces.

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace rcpt {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

// Dense complex Hermitian operator. Construction checks
// max|M - M^dagger| < 1e-12 * (1 + max|M|) and throws ParameterError otherwise.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(MatrixXcd entries);

    static HermitianMatrix from_real(const MatrixXd& m) { return HermitianMatrix(m.cast<cplx>()); }

    Eigen::Index dim() const noexcept { return m_.rows(); }
    const MatrixXcd& entries() const noexcept { return m_; }
    cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

private:
    MatrixXcd m_;
};

// max_ij |M_ij - conj(M_ji)|
double hermiticity_error(const MatrixXcd& m);

// Standard Kronecker product, (A (x) B)_{(i*rb+k),(j*cb+l)} = A_ij B_kl.
MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);

// Column stacking: vec(X)[i + j*d] = X(i, j). vec(A X B) = (B^T (x) A) vec(X).
VectorXcd vec(const MatrixXcd& x);
MatrixXcd unvec(const VectorXcd& v, Eigen::Index dim);

// Truncated bosonic annihilation operator on `levels` Fock states.
MatrixXd annihilation(Eigen::Index levels);

// State on a (outer (x) inner) space with index outer*inner_dim + inner.
// Returns the trace over the outer factor.
MatrixXcd trace_out_outer(const MatrixXcd& rho, Eigen::Index outer_dim, Eigen::Index inner_dim);

// Smallest eigenvalue of the Hermitian part of rho.
double min_eigenvalue(const MatrixXcd& rho);

} // namespace rcpt
