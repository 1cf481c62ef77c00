// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rmtq/dynamics.hpp"

namespace rmtq {

struct RiseSegment {
    double t_start = 0.0;
    double t_end = 0.0;
    double delta_alpha = 0.0;
};

// Integrated backflow M = 2 Int_{dalpha/dt > 0} dalpha, evaluated without
// numerical differentiation as twice the sum of positive grid increments
// (exact for the sampled series, telescoping within each rise).
struct NMResult {
    double measure = 0.0;
    std::vector<RiseSegment> rise_segments;
    std::pair<double, double> window{0.0, 0.0};
};

NMResult nm_measure(const AlphaTrace& trace,
                    std::pair<double, double> window = {0.0, 10.0});

// One sweep point: the measure on the ensemble-mean trace, its jackknife
// standard error, and the white-noise floor implied by the pointwise
// standard errors.  Measures below the floor are flagged as consistent
// with zero.
struct NMPoint {
    double s = 0.0;
    double measure = 0.0;
    double stderr_ = 0.0;
    double noise_floor = 0.0;
    bool consistent_with_zero = false;
};

struct NMSweepOptions {
    double omega = 0.0;
    double dt = 0.01;
    int workers = 1;
    std::pair<double, double> window{0.0, 10.0};
};

std::vector<NMPoint> nm_sweep(const std::vector<double>& s_values, int N,
                              int realizations, std::uint64_t master_seed,
                              const NMSweepOptions& options = {});

// Smallest s with M(s) < threshold and M(s') < threshold for every sampled
// s' beyond it; linearly interpolated between the bracketing samples.
std::optional<double> detect_transition(
    const std::vector<std::pair<double, double>>& curve, double threshold);

std::optional<double> detect_transition(const std::vector<NMPoint>& sweep,
                                        double threshold);

}  // namespace rmtq
