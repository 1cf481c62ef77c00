// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "rmtq/ensembles.hpp"
#include "rmtq/errors.hpp"
#include "rmtq/special_functions.hpp"
#include "rmtq/spectral_oracles.hpp"

using namespace rmtq;

namespace {

// Independent small-n oracle: the level density of the n-dim ensemble is
// R1(E) = sum_{j<n} phi_j(E)^2 with oscillator functions at scale c = n/2;
// integrate cos(E t) R1(E) / n by plain Simpson on a wide interval.
double b1_simpson_oracle(double t, int n)
{
    const double c = 0.5 * n;
    const int steps = 48000;
    const double lo = -12.0, hi = 12.0;
    const double h = (hi - lo) / steps;
    auto density = [&](double e) {
        const double x = e * std::sqrt(c);
        // orthonormal oscillator functions, plain recurrence (small n only)
        double prev = std::pow(c / M_PI, 0.25) * std::exp(-0.5 * c * e * e);
        double val = prev * prev;
        double curr = std::sqrt(2.0) * x * prev;
        for (int j = 1; j < n; ++j) {
            val += curr * curr;
            const double next = std::sqrt(2.0 / (j + 1)) * x * curr -
                                std::sqrt(static_cast<double>(j) / (j + 1)) * prev;
            prev = curr;
            curr = next;
        }
        return val;
    };
    double acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double e = lo + i * h;
        const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += w * std::cos(e * t) * density(e);
    }
    return acc * h / 3.0 / n;
}

// closed-form eigenvalues of a 2x2 Hermitian matrix
std::pair<double, double> eig2(const MatrixXcd& m)
{
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double off = std::abs(m(0, 1));
    const double mid = 0.5 * (a + d);
    const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
    return {mid - rad, mid + rad};
}

}  // namespace

TEST_SUITE_BEGIN("spectral_oracles");

TEST_CASE("b1 normalization and evenness")
{
    for (int n : {2, 8, 64}) {
        CHECK(b1_gue(0.0, n) == doctest::Approx(1.0).epsilon(1e-12));
        for (double t : {0.3, 1.7, 4.2}) {
            CHECK(std::abs(b1_gue(t, n) - b1_gue(-t, n)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(b1_gue(1.0, 0), ConfigError);
}

TEST_CASE("b1 against the independent simpson oracle at small n")
{
    for (int n : {2, 3, 6}) {
        for (double t : {0.5, 1.0, 2.5}) {
            CHECK(b1_gue(t, n) == doctest::Approx(b1_simpson_oracle(t, n)).epsilon(1e-9));
        }
    }
}

TEST_CASE("b1 approaches the semicircle transform at large dimension")
{
    const int n = 2048;
    for (double t = 0.0; t <= 4.0; t += 0.25) {
        CHECK(std::abs(b1_gue(t, n) - j1_ratio(t)) <= 0.01);
    }
}

TEST_CASE("b2 normalization, decay, and monte carlo cross-check")
{
    CHECK(b2_gue(0.0, 2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(b2_gue(0.0, 8) == doctest::Approx(1.0).epsilon(1e-10));
    // correlations decay beyond the Heisenberg time
    CHECK(std::abs(b2_gue(20.0, 2)) < 0.01);

    // MC oracle at n = 2: E[sum_{j != k} cos((v_j - v_k) t)] = n^2 b1^2 - n b2
    const int n = 2;
    const double t = 1.0;
    const int draws = 100000;
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < draws; ++i) {
        const auto h = sample_gue(EnsembleSpec::gue_unit_trace(n), derive_stream(61, i));
        const auto [v1, v2] = eig2(h.matrix());
        const double q = 2.0 * std::cos((v1 - v2) * t);
        sum += q;
        sum_sq += q * q;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum_sq - sum * sum / draws) / (draws - 1.0) / draws);
    const double b1 = b1_gue(t, n);
    const double expected = n * n * b1 * b1 - n * b2_gue(t, n);
    CHECK(std::abs(mean - expected) < 3.0 * se);
}

TEST_CASE("quadrature guard reports excessive times")
{
    CHECK_THROWS_AS(b1_gue(1e4, 2), NumericError);
}

TEST_CASE("alpha0 exact endpoints")
{
    for (int N : {1, 2, 16}) {
        CHECK(alpha0_exact(0.0, N) == doctest::Approx(1.0).epsilon(1e-10));
    }
    // long-time limit 1/(2N+1); N = 2 -> 0.2 (b1, b2 both decayed at t = 35)
    double acc = 0.0;
    int count = 0;
    for (double t = 30.0; t <= 40.0; t += 0.5) {
        acc += alpha0_exact(t, 2);
        ++count;
    }
    CHECK(std::abs(acc / count - 0.2) < 0.01);
}

TEST_CASE("alpha0 from a spectrum")
{
    VectorXd same(4);
    same << 0.7, 0.7, 0.7, 0.7;
    for (double t : {0.0, 1.3, 8.0}) {
        CHECK(alpha0_from_spectrum(same, t) == doctest::Approx(1.0).epsilon(1e-12));
    }
    VectorXd pm(2);
    pm << 1.0, -1.0;
    // 2N = 2: alpha0(t) = (4 cos^2 t - 1)/3
    CHECK(alpha0_from_spectrum(pm, M_PI_2) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    CHECK(alpha0_from_spectrum(pm, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(alpha0_from_spectrum(pm, 0.4) ==
          doctest::Approx((4.0 * std::cos(0.4) * std::cos(0.4) - 1.0) / 3.0)
              .epsilon(1e-12));
}

TEST_CASE("alpha0 large-N limit")
{
    CHECK(alpha0_largeN(0.0) == 1.0);
    CHECK(alpha0_largeN(1e-7) == doctest::Approx(1.0).epsilon(1e-10));
    // first zero at half the first J1 zero
    const double z = 3.8317059702075123 / 2.0;
    CHECK(std::abs(alpha0_largeN(z)) < 1e-12);
    for (double t = 0.0; t < 12.0; t += 0.1) CHECK(alpha0_largeN(t) >= 0.0);
}

TEST_CASE("spectrum formula averaged over draws reproduces the exact curve")
{
    // isolates the eigenvector average (Haar) from the eigenvalue average
    const int N = 4, draws = 4000;
    for (double t : {0.5, 1.5, 3.0}) {
        double sum = 0, sum_sq = 0;
        for (int i = 0; i < draws; ++i) {
            const auto v = sample_gue(EnsembleSpec::gue_unit_trace(2 * N),
                                      derive_stream(67, i));
            Eigen::SelfAdjointEigenSolver<MatrixXcd> es(v.matrix(),
                                                        Eigen::EigenvaluesOnly);
            const double a = alpha0_from_spectrum(es.eigenvalues(), t);
            sum += a;
            sum_sq += a * a;
        }
        const double mean = sum / draws;
        const double se =
            std::sqrt((sum_sq - sum * sum / draws) / (draws - 1.0) / draws);
        CHECK(std::abs(mean - alpha0_exact(t, N)) < 4.0 * se + 1e-9);
    }
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("properties");

TEST_CASE("finite-N alpha0 converges to the large-N limit")
{
    // sup gap over t <= 4 at N = 256 below 0.03
    double sup = 0.0;
    for (double t = 0.25; t <= 4.0; t += 0.25) {
        sup = std::max(sup, std::abs(alpha0_exact(t, 256) - alpha0_largeN(t)));
    }
    CHECK(sup < 0.03);
}

TEST_SUITE_END();
