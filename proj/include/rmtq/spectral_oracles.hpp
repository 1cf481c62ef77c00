// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

namespace rmtq {

// One- and two-point spectral form factors of the n-dimensional GUE at
// element variance 1/n (level density -> semicircle on (-2, 2)).
//
// b1 is the Fourier transform of the level density R1(E) = sum_j phi_j(E)^2,
// normalized so b1(0) = 1; b2 is the double Fourier transform of the cluster
// function T2(E1,E2) = (sum_j phi_j(E1) phi_j(E2))^2, normalized by its t = 0
// value.  Both are evaluated by Gauss-Hermite quadrature on the oscillator
// basis; nodes, weights and the basis table are cached per dimension.
double b1_gue(double t, int n);
double b2_gue(double t, int n);

// Ensemble-averaged alpha at full coupling (s = 0) for an environment of
// dimension N (the coupling matrix has dimension 2N):
//   alpha0 = (4 N^2 b1^2 + 2N (1 - b2) - 1) / (4 N^2 - 1).
// The 2N[1 - b2] middle term (not 4N) is the one consistent with the
// long-time limit 1/(2N+1).
double alpha0_exact(double t, int N);

// Single-realization alpha at s = 0 from a coupling spectrum of 2N levels:
//   alpha0 = (4 N^2 |f|^2 - 1)/(4 N^2 - 1),  f = (1/2N) sum_j e^{-i v_j t}.
double alpha0_from_spectrum(const Eigen::VectorXd& eigenvalues, double t);

// N -> infinity limit: [J1(2t)/t]^2.
double alpha0_largeN(double t);

}  // namespace rmtq
