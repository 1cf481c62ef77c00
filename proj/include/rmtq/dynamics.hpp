// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "rmtq/ensembles.hpp"

namespace rmtq {

// Model parameters of the strong-coupling form
//   H = omega sigma_z (x) 1_N + s 1_2 (x) H_env + V,
// with the qubit on the slow (outer) tensor factor, H_env an N-dimensional
// GUE at element variance 1/N and V a 2N-dimensional GUE at variance 1/(2N).
struct ModelParams {
    int N = 1;
    double s = 0.0;
    double omega = 0.0;
};

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;    // ascending
    Eigen::MatrixXcd eigenvectors;  // unitary, columns
};

// Dense Hermitian eigensolver (zheevd with an Eigen fallback); failure is
// reported, never silent.
SpectralDecomposition decompose(const HermitianMatrix& h);

HermitianMatrix assemble_hamiltonian(const ModelParams& params,
                                     const HermitianMatrix& h_env,
                                     const HermitianMatrix& coupling);

// 4x4 real matrix of the qubit channel in the Pauli basis (1, sx, sy, sz),
// normalized so that the t = 0 channel is the identity:
//   L_{jk}(t) = (1/2) tr[ sigma^j (x) 1  U^t  sigma^k (x) (1/N)  U^{-t} ].
struct PauliTransferMatrix {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
};

PauliTransferMatrix channel_matrix(const SpectralDecomposition& decomp, double t);

// Time grid plus alpha values; the central observable.
struct TraceMeta {
    ModelParams params;
    int realizations = 0;
    std::uint64_t master_seed = 0;
};

struct AlphaTrace {
    Eigen::VectorXd times;
    Eigen::VectorXd alpha;
    Eigen::VectorXd stderr_;  // empty when not applicable
    TraceMeta meta;
};

// alpha(t) = (1/2N) tr[sz (x) 1 U^{-t} sz (x) 1 U^t] for one realization of
// an omega = 0 model; O((2N)^2) per time point after diagonalization.
AlphaTrace alpha_single(const SpectralDecomposition& decomp,
                        const Eigen::VectorXd& times);

// Purity of the isotropic channel: P = (1 + alpha^2) / 2.
double purity_of_alpha(double alpha);

// One realization of the strong-coupling model; realization r draws
// H_env from stream (seed, 2r) and V from stream (seed, 2r + 1).
Eigen::VectorXd alpha_realization(const ModelParams& params,
                                  const Eigen::VectorXd& times, int realization,
                                  std::uint64_t master_seed);

// Pointwise mean and standard error over R independent realizations;
// deterministic given master_seed, independent of worker count.
AlphaTrace ensemble_alpha(const ModelParams& params, const Eigen::VectorXd& times,
                          int realizations, std::uint64_t master_seed,
                          int workers = 1);

// omega != 0 channel: the ensemble mean is a dephasing/depolarizing
// combination, reported through its diagonal.  alpha_depol averages the
// sigma_x and sigma_y entries; alpha_z is the sigma_z entry.
struct ChannelDiagonalTrace {
    Eigen::VectorXd times;
    Eigen::VectorXd alpha_depol, alpha_z;
    Eigen::VectorXd stderr_depol, stderr_z;
    TraceMeta meta;
};

// One realization of the channel diagonal: row 0 = depolarizing part
// (mean of the sigma_x / sigma_y entries), row 1 = sigma_z entry.
Eigen::MatrixXd channel_diag_realization(const ModelParams& params,
                                         const Eigen::VectorXd& times,
                                         int realization,
                                         std::uint64_t master_seed);

ChannelDiagonalTrace ensemble_channel_diagonal(const ModelParams& params,
                                               const Eigen::VectorXd& times,
                                               int realizations,
                                               std::uint64_t master_seed,
                                               int workers = 1);

// Weak-coupling model H = 1_2 (x) H_env + lambda V with V at N-independent
// element variance 1 (2N-dimensional); H_env as above.
Eigen::VectorXd alpha_realization_weak(int N, double lambda,
                                       const Eigen::VectorXd& times,
                                       int realization, std::uint64_t master_seed);

AlphaTrace ensemble_alpha_weak(int N, double lambda, const Eigen::VectorXd& times,
                               int realizations, std::uint64_t master_seed,
                               int workers = 1);

// Smallest grid time at which the largest eigenphase of the echo operator
// e^{iVt} e^{-iHt} reaches +-pi (H = s 1 (x) H_env + V); nullopt if the grid
// never gets there.  Grid resolution bounds the answer's error.
std::optional<double> echo_eigenphase_cutoff(const HermitianMatrix& h_env,
                                             const HermitianMatrix& coupling,
                                             double s,
                                             const Eigen::VectorXd& time_grid);

}  // namespace rmtq
