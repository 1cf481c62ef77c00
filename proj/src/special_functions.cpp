// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmtq/special_functions.hpp"

#include <cmath>

namespace rmtq {

namespace {

// J1 power series: (x/2) * sum_k (-1)^k (x^2/4)^k / (k! (k+1)!).
double j1_series(double x)
{
    const double q = 0.25 * x * x;
    double term = 0.5 * x;
    double sum = term;
    for (int k = 1; k <= 60; ++k) {
        term *= -q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// Hankel expansion: J1(x) = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
// chi = x - 3 pi/4.  With mu = 4 nu^2 = 4 and c_m = a_m / x^m,
//   a_m = a_{m-1} (mu - (2m-1)^2) / (8 m),
// P collects even m with alternating sign, Q the odd m.
double j1_asymptotic(double x)
{
    const double mu = 4.0;
    double p = 1.0, q = 0.0;
    double c = 1.0;
    for (int m = 1; m <= 18; ++m) {
        const double odd = 2.0 * m - 1.0;
        c *= (mu - odd * odd) / (8.0 * m * x);
        if (m % 2 == 1) {
            q += (((m - 1) / 2) % 2 == 0) ? c : -c;
        } else {
            p += ((m / 2) % 2 == 0) ? c : -c;
        }
        if (std::abs(c) < 1e-17) break;
    }
    const double chi = x - 2.356194490192344929;  // 3 pi / 4
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// A&S 7.1.14: sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated by the modified Lentz algorithm.
double erfc_continued_fraction(double x)
{
    const double tiny = 1e-300;
    double f = tiny, big_c = f, big_d = 0.0;
    for (int n = 1; n <= 300; ++n) {
        const double an = (n == 1) ? 1.0 : 0.5 * (n - 1);
        big_d = x + an * big_d;
        if (big_d == 0.0) big_d = tiny;
        big_c = x + an / big_c;
        if (big_c == 0.0) big_c = tiny;
        big_d = 1.0 / big_d;
        const double delta = big_c * big_d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-x * x) / std::sqrt(M_PI) * f;
}

}  // namespace

double bessel_j1(double x)
{
    const double ax = std::abs(x);
    const double val = (ax <= 12.0) ? j1_series(ax) : j1_asymptotic(ax);
    return x < 0 ? -val : val;  // J1 is odd
}

double j1_ratio(double t)
{
    const double at = std::abs(t);
    if (at < 1e-8) {
        return 1.0 - 0.5 * t * t;  // J1(2t)/t = 1 - t^2/2 + O(t^4)
    }
    return bessel_j1(2.0 * t) / t;
}

double erf_accurate(double x)
{
    const double ax = std::abs(x);
    double val;
    if (ax < 2.0) {
        // erf(x) = 2/sqrt(pi) e^{-x^2} sum_k 2^k x^{2k+1} / (1*3*...*(2k+1)),
        // all terms positive so there is no cancellation.
        const double x2 = ax * ax;
        double term = ax;
        double sum = ax;
        for (int k = 1; k <= 100; ++k) {
            term *= 2.0 * x2 / (2.0 * k + 1.0);
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        val = 2.0 / std::sqrt(M_PI) * std::exp(-x2) * sum;
    } else {
        val = 1.0 - erfc_continued_fraction(ax);
    }
    return x < 0 ? -val : val;
}

}  // namespace rmtq
