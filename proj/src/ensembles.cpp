// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmtq/ensembles.hpp"

#include <cmath>

#include "rmtq/errors.hpp"

namespace rmtq {

HermitianMatrix HermitianMatrix::from_symmetrized(const MatrixXcd& m)
{
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw ConfigError("HermitianMatrix: matrix must be square and non-empty");
    }
    HermitianMatrix h;
    h.m_ = 0.5 * (m + m.adjoint());
    // make the stored invariant exact, including the diagonal
    for (int i = 0; i < h.m_.rows(); ++i) {
        h.m_(i, i) = Complex(h.m_(i, i).real(), 0.0);
        for (int j = i + 1; j < h.m_.cols(); ++j) {
            h.m_(j, i) = std::conj(h.m_(i, j));
        }
    }
    return h;
}

HermitianMatrix HermitianMatrix::from_checked(const MatrixXcd& m, double tol)
{
    const double dev = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
    if (dev > tol * std::max(1.0, m.cwiseAbs().maxCoeff())) {
        throw ConfigError("HermitianMatrix: input is not Hermitian");
    }
    return from_symmetrized(m);
}

HermitianMatrix HermitianMatrix::identity(int dim)
{
    return from_symmetrized(MatrixXcd::Identity(dim, dim));
}

HermitianMatrix sample_gue(const EnsembleSpec& spec, const RngStream& stream)
{
    if (spec.kind != EnsembleKind::GUE) {
        throw ConfigError("sample_gue: spec.kind must be GUE");
    }
    if (spec.dim < 1) throw ConfigError("sample_gue: dim must be >= 1");
    if (!(spec.element_variance > 0.0)) {
        throw ConfigError("sample_gue: element_variance must be positive");
    }
    const int n = spec.dim;
    GaussianSource gauss(stream);
    // per-element variance of the Ginibre factor is 2v, split over re/im
    const double sigma = std::sqrt(spec.element_variance);
    MatrixXcd a(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            a(i, j) = Complex(sigma * gauss(), sigma * gauss());
        }
    }
    return HermitianMatrix::from_symmetrized(a);
}

HermitianMatrix sample_gpue(int dim, const RngStream& stream,
                            Eigen::VectorXd* drawn_eigenvalues)
{
    if (dim < 1) throw ConfigError("sample_gpue: dim must be >= 1");
    // one stream feeds both the eigenvalue draw and the Haar factor: pull the
    // diagonal first, then hand the remaining deviates to the Ginibre fill
    GaussianSource gauss(stream);
    VectorXd d(dim);
    for (int i = 0; i < dim; ++i) d[i] = gauss();
    if (drawn_eigenvalues) *drawn_eigenvalues = d;

    MatrixXcd g(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            g(i, j) = Complex(gauss(), gauss());
        }
    }
    Eigen::HouseholderQR<MatrixXcd> qr(g);
    MatrixXcd q = qr.householderQ();
    const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
    }
    return HermitianMatrix::from_symmetrized(q * d.asDiagonal() * q.adjoint());
}

MatrixXcd sample_haar_unitary(int dim, const RngStream& stream)
{
    if (dim < 1) throw ConfigError("sample_haar_unitary: dim must be >= 1");
    GaussianSource gauss(stream);
    MatrixXcd g(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            g(i, j) = Complex(gauss(), gauss());
        }
    }
    Eigen::HouseholderQR<MatrixXcd> qr(g);
    MatrixXcd q = qr.householderQ();
    const MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Phase fix: absorb diag(R)/|diag(R)| into Q so the effective triangular
    // factor has a positive real diagonal; without it the QR output is not
    // Haar distributed.
    for (int j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= (mag > 0.0) ? rjj / mag : Complex(1.0, 0.0);
    }
    return q;
}

}  // namespace rmtq
