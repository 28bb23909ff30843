// linalg.cpp — Dense helpers

#include "rcpt/linalg.hpp"

#include <cmath>
#include <utility>

#include "rcpt/errors.hpp"

namespace rcpt {

HermitianMatrix::HermitianMatrix(MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw ParameterError("HermitianMatrix: expected a non-empty square matrix");
    }
    const double scale = 1.0 + m_.cwiseAbs().maxCoeff();
    const double err = hermiticity_error(m_);
    if (!(err < 1e-12 * scale)) {
        throw ParameterError("HermitianMatrix: input is not Hermitian (max |M - M^dagger| = " +
                             std::to_string(err) + ")");
    }
}

double hermiticity_error(const MatrixXcd& m) {
    if (m.size() == 0) return 0.0;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

VectorXcd vec(const MatrixXcd& x) {
    return Eigen::Map<const VectorXcd>(x.data(), x.size());
}

MatrixXcd unvec(const VectorXcd& v, Eigen::Index dim) {
    return Eigen::Map<const MatrixXcd>(v.data(), dim, dim);
}

MatrixXd annihilation(Eigen::Index levels) {
    MatrixXd a = MatrixXd::Zero(levels, levels);
    for (Eigen::Index n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

MatrixXcd trace_out_outer(const MatrixXcd& rho, Eigen::Index outer_dim, Eigen::Index inner_dim) {
    MatrixXcd out = MatrixXcd::Zero(inner_dim, inner_dim);
    for (Eigen::Index n = 0; n < outer_dim; ++n) {
        out += rho.block(n * inner_dim, n * inner_dim, inner_dim, inner_dim);
    }
    return out;
}

double min_eigenvalue(const MatrixXcd& rho) {
    const MatrixXcd herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

} // namespace rcpt
