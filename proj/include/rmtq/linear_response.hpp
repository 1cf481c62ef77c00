// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

#include "rmtq/dynamics.hpp"

namespace rmtq {

// One-point form factor driving the response integrand.  Semicircle level
// density gives b1(x) = J1(2x)/x; a Gaussian density gives e^{-x^2/2}.
struct Kernel {
    enum class Kind { Semicircle, Gaussian };
    Kind kind = Kind::Semicircle;

    double b1(double x) const;
    static Kernel semicircle() { return {Kind::Semicircle}; }
    static Kernel gaussian() { return {Kind::Gaussian}; }
};

struct QuadratureSpec {
    double step = 0.01;       // target lattice spacing (composite Simpson)
    double tolerance = 1e-6;  // Richardson error target
    int max_refinements = 2;
};

// Auxiliary kernels with falling-factorial prefactors in the coupling
// dimension 2N:
//   F(x)     = 2N (2N-1) b1(x)^2
//   G(x,y,z) = 2N (2N-1) (2N-2) b1(x) b1(y) b1(z)
//   H(x,y,z) = 2N (2N-1) (2N-2) (2N-3) b1(x) b1(y-x) b1(z-y) b1(z)
double aux_f(double x, long N, const Kernel& kernel);
double aux_g(double x, double y, double z, long N, const Kernel& kernel);
double aux_h(double x, double y, double z, long N, const Kernel& kernel);

// The 15 time-dependent components of the echo-response decomposition,
// which = 1 or 2 selects the A^(1) or A^(2) table.  Requires the ordering
// 0 <= t'' <= t' <= t.
std::array<double, 15> f_components(double t, double tp, double tpp, long N,
                                    const Kernel& kernel, int which);

// Second-order echo response
//   alpha2(t) = (1/N) Int_0^t dt' Int_0^t' dt'' (A1 - A2),
// A_i contracted from the exact C^T M^(i) vectors and the component tables.
// Triangular-domain composite Simpson with a Richardson check.
double alpha2(double t, long N, const Kernel& kernel, const QuadratureSpec& quad = {
                                                          0.01, 1e-4, 2});

// Leading-order N -> infinity reduction: only two products survive,
//   alpha2_inf = 2 II [ b1(t) b1(t'-t-t'') b1(t''-t')
//                       - b1(t'') b1(t-t'') b1(t'-t) b1(t') ].
double alpha2_largeN(double t, const Kernel& kernel, const QuadratureSpec& quad = {});

// Closed form of alpha2_largeN for the Gaussian kernel:
//   sqrt(pi) t e^{-3t^2/4} Erf(t/2) - pi e^{-t^2/2} Erf(t/2)^2.
double alpha2_gpue_closed(double t);

// Strong-coupling linear response alpha(t) ~ alpha0(t) - s^2 alpha2(t).
double alpha_lr_strong(double t, double s, int N);
double alpha_lr_strong_largeN(double t, double s);

// Linear response joined to an exponential tail at the eigenphase cutoff.
// t_cut is the median cutoff over a small sub-ensemble; the tail decay rate
// comes from a log-linear fit on [0.8 t_cut, t_cut], anchored for continuity.
struct CompositeAlpha {
    AlphaTrace trace;          // composite curve
    Eigen::VectorXd lr_alpha;  // plain linear-response values on the grid
    double t_cut = 0.0;        // +inf encoded as a value beyond the grid
    bool cutoff_reached = false;
    bool tail_fitted = false;  // false = pure LR past t_cut (flagged fallback)
    double gamma = 0.0;
};

CompositeAlpha composite_alpha(const Eigen::VectorXd& times, double s, int N,
                               std::uint64_t master_seed, int sub_ensemble = 16,
                               int workers = 1);

// Weak-coupling purity theory.
//   g(t)     = 2 t max(t, tau_h) + (2 / 3 tau_h) min(t, tau_h)^3
//   P_LR     = 1 - lambda^2 g(t)
//   P_ELR    = 1/2 + 1/2 exp[(P_LR - 1)/2]
//   alpha    = exp(-lambda^2 g(t) / 2)
double g_of_t(double t, double tau_h);
double p_lr(double t, double lambda, double tau_h);
double p_elr(double t, double lambda, double tau_h);
double alpha_weak(double t, double lambda, double tau_h);

// Coupling-strength map between the two model conventions: lambda = 1/(s N).
double lambda_from_s(double s, long N);

}  // namespace rmtq
