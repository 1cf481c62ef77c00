// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "rmtq/rng.hpp"

namespace rmtq {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXd = Eigen::VectorXd;

// Dense complex square matrix with the Hermiticity invariant enforced as
// stored: entry(i,j) == conj(entry(j,i)) exactly.
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    // Symmetrizes the input: H = (M + M^dagger)/2.
    static HermitianMatrix from_symmetrized(const MatrixXcd& m);

    // Trusts the input to be Hermitian up to `tol`; throws otherwise.
    static HermitianMatrix from_checked(const MatrixXcd& m, double tol = 1e-12);

    static HermitianMatrix zero(int dim) { return from_symmetrized(MatrixXcd::Zero(dim, dim)); }
    static HermitianMatrix identity(int dim);

    int dim() const { return static_cast<int>(m_.rows()); }
    const MatrixXcd& matrix() const { return m_; }

private:
    MatrixXcd m_;
};

enum class EnsembleKind { GUE, GPUE };

// Matrix ensemble parameters.  element_variance is the variance of a single
// off-diagonal complex element (and of each real diagonal element); the
// strong-coupling convention is element_variance = 1/dim, which puts the
// large-dim level density on a semicircle supported on (-2, 2).
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::GUE;
    int dim = 1;
    double element_variance = 1.0;

    static EnsembleSpec gue(int dim, double element_variance)
    {
        return {EnsembleKind::GUE, dim, element_variance};
    }
    static EnsembleSpec gue_unit_trace(int dim)  // variance = 1/dim
    {
        return {EnsembleKind::GUE, dim, 1.0 / dim};
    }
};

// GUE draw as H = (A + A^dagger)/2 with A complex Ginibre of per-element
// variance 2 * element_variance, which yields
// <H_ij H_kl> = element_variance * delta_jk delta_il exactly.
HermitianMatrix sample_gue(const EnsembleSpec& spec, const RngStream& stream);

// Gaussian Poissonian unitary ensemble: U D U^dagger with D i.i.d. standard
// normal and U Haar.  No level repulsion.  The drawn diagonal is returned
// through drawn_eigenvalues when requested.
HermitianMatrix sample_gpue(int dim, const RngStream& stream,
                            Eigen::VectorXd* drawn_eigenvalues = nullptr);

// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
// convention that the triangular factor has a positive real diagonal.
MatrixXcd sample_haar_unitary(int dim, const RngStream& stream);

}  // namespace rmtq
