// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace rmtq {

// Bessel function of the first kind, order 1. Power series for |x| <= 12,
// Hankel asymptotic expansion beyond. Absolute accuracy ~1e-13 on |x| <= 100.
double bessel_j1(double x);

// J1(2t)/t with the t -> 0 limit (value 1) handled explicitly.
double j1_ratio(double t);

// Error function, |erf(x) - exact| < 1e-14. Series for small |x|,
// continued-fraction complement for large |x|.
double erf_accurate(double x);

}  // namespace rmtq
