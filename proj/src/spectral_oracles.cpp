// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmtq/spectral_oracles.hpp"

#include <lapacke.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "rmtq/errors.hpp"
#include "rmtq/special_functions.hpp"

namespace rmtq {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Evaluate the orthonormal Hermite functions psi_j(x), j < count, together
// with sum_{j<m} psi_j(x)^2.  The upward recurrence is carried in scaled form
// (mantissa, power-of-two exponent) so that far-tail nodes, where psi_0
// underflows, still recover the correct magnitudes once j passes the
// classical turning point.
void hermite_functions(double x, int m, int count, double* values, double* sum_sq)
{
    // psi_0 = pi^{-1/4} exp(-x^2/2) = mant * 2^expo
    const double log2_psi0 = (-0.5 * x * x - 0.25 * std::log(M_PI)) / std::log(2.0);
    int expo = static_cast<int>(std::floor(log2_psi0));
    double prev = std::exp2(log2_psi0 - expo);  // psi_0 mantissa
    double curr = std::sqrt(2.0) * x * prev;    // psi_1 mantissa (same exponent)

    double total = 0.0;
    auto emit = [&](int j, double mant) {
        const double v = std::ldexp(mant, expo);  // underflows harmlessly
        if (j < count && values) values[j] = v;
        total += v * v;
    };
    emit(0, prev);
    if (m > 1) emit(1, curr);
    for (int j = 1; j + 1 < m; ++j) {
        double next = std::sqrt(2.0 / (j + 1)) * x * curr -
                      std::sqrt(static_cast<double>(j) / (j + 1)) * prev;
        prev = curr;
        curr = next;
        const double mag = std::abs(curr);
        if (mag > 1e200) {
            prev = std::ldexp(prev, -700);
            curr = std::ldexp(curr, -700);
            expo += 700;
        } else if (mag < 1e-200 && mag > 0.0 && expo < -100) {
            prev = std::ldexp(prev, 700);
            curr = std::ldexp(curr, 700);
            expo -= 700;
        }
        emit(j + 1, curr);
    }
    if (sum_sq) *sum_sq = total;
}

// Quadrature table for one matrix dimension n.  Nodes are the roots of
// psi_m with m = max(4n, 2048); the floor keeps a usable time range at
// small n, where the oscillatory factor consumes polynomial degree.  The
// modified weights 1/sum_{j<m} psi_j^2 integrate plain dx sums of
// Hermite-function products exactly up to the available degree.
struct HermiteBasis {
    int n = 0;
    int m = 0;
    VectorXd nodes;    // x_i, ascending
    VectorXd weights;  // w_i = 1 / sum_{j<m} psi_j(x_i)^2
    VectorXd density;  // R(x_i) = sum_{j<n} psi_j(x_i)^2

    mutable std::mutex psi_mutex;
    mutable MatrixXd psi_scaled;  // m x n, psi_j(x_i) sqrt(w_i); built lazily
    mutable double b2_at_zero = 0.0;

    double tau(double t) const { return t / std::sqrt(0.5 * n); }

    // Phase budget guard: the oscillatory factor e^{-i x tau} must stay
    // within the polynomial degree the quadrature can represent.
    void check_time(double t) const
    {
        const double phase = std::abs(tau(t)) * nodes.cwiseAbs().maxCoeff();
        if (phase > 0.5 * (2.0 * m - 2.0 * n)) {
            throw NumericError("form factor quadrature: |t| too large for order " +
                               std::to_string(m) + " at dimension " + std::to_string(n));
        }
    }

    const MatrixXd& psi() const
    {
        std::lock_guard<std::mutex> lock(psi_mutex);
        if (psi_scaled.size() == 0) {
            psi_scaled.resize(m, n);
            std::vector<double> vals(n);
            for (int i = 0; i < m; ++i) {
                hermite_functions(nodes[i], m, n, vals.data(), nullptr);
                const double sw = std::sqrt(weights[i]);
                for (int j = 0; j < n; ++j) psi_scaled(i, j) = vals[j] * sw;
            }
            // raw t = 0 value of the double integral; analytic value is 1
            b2_at_zero = (psi_scaled.transpose() * psi_scaled).squaredNorm() / n;
            if (std::abs(b2_at_zero - 1.0) > 1e-8) {
                throw NumericError("b2 quadrature failed the t = 0 normalization check");
            }
        }
        return psi_scaled;
    }
};

std::shared_ptr<const HermiteBasis> basis_for(int n)
{
    static std::map<int, std::shared_ptr<HermiteBasis>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    auto basis = std::make_shared<HermiteBasis>();
    basis->n = n;
    const int m = std::max(4 * n, 2048);
    basis->m = m;

    // nodes = eigenvalues of the Jacobi matrix, off-diagonal sqrt(k/2)
    std::vector<double> diag(m, 0.0), off(m - 1);
    for (int k = 1; k < m; ++k) off[k - 1] = std::sqrt(0.5 * k);
    const int info = LAPACKE_dsterf(m, diag.data(), off.data());
    if (info != 0) throw NumericError("dsterf failed computing quadrature nodes");

    basis->nodes = Eigen::Map<VectorXd>(diag.data(), m);
    // enforce the symmetry the spectrum has analytically
    for (int i = 0; i < m / 2; ++i) {
        const double v = 0.5 * (basis->nodes[m - 1 - i] - basis->nodes[i]);
        basis->nodes[m - 1 - i] = v;
        basis->nodes[i] = -v;
    }

    basis->weights.resize(m);
    basis->density.resize(m);
    std::vector<double> vals(n);
    for (int i = 0; i < m; ++i) {
        double ssq = 0.0;
        hermite_functions(basis->nodes[i], m, n, vals.data(), &ssq);
        basis->weights[i] = 1.0 / ssq;
        double r = 0.0;
        for (int j = 0; j < n; ++j) r += vals[j] * vals[j];
        basis->density[i] = r;
    }

    // b1(0) = 1 is exact for the quadrature; treat failure as non-convergence
    const double b1_zero = basis->weights.dot(basis->density) / n;
    if (std::abs(b1_zero - 1.0) > 1e-8) {
        throw NumericError("b1 quadrature failed the t = 0 normalization check");
    }

    cache[n] = basis;
    return basis;
}

}  // namespace

double b1_gue(double t, int n)
{
    if (n < 1) throw ConfigError("b1_gue: dimension must be >= 1");
    const auto basis = basis_for(n);
    basis->check_time(t);
    const double tau = basis->tau(t);
    double acc = 0.0;
    for (int i = 0; i < basis->m; ++i) {
        acc += basis->weights[i] * basis->density[i] * std::cos(basis->nodes[i] * tau);
    }
    return acc / n;
}

double b2_gue(double t, int n)
{
    if (n < 1) throw ConfigError("b2_gue: dimension must be >= 1");
    const auto basis = basis_for(n);
    basis->check_time(t);
    const MatrixXd& psi = basis->psi();
    const double tau = basis->tau(t);

    const VectorXd c = (basis->nodes * tau).array().cos();
    const VectorXd s = (basis->nodes * tau).array().sin();
    const MatrixXd g_re = psi.transpose() * c.asDiagonal() * psi;
    const MatrixXd g_im = psi.transpose() * s.asDiagonal() * psi;
    const double raw = (g_re.squaredNorm() + g_im.squaredNorm()) / n;
    return raw / basis->b2_at_zero;
}

double alpha0_exact(double t, int N)
{
    if (N < 1) throw ConfigError("alpha0_exact: N must be >= 1");
    const int n = 2 * N;
    const double b1 = b1_gue(t, n);
    const double b2 = b2_gue(t, n);
    const double nn = static_cast<double>(N);
    return (4.0 * nn * nn * b1 * b1 + 2.0 * nn * (1.0 - b2) - 1.0) / (4.0 * nn * nn - 1.0);
}

double alpha0_from_spectrum(const Eigen::VectorXd& eigenvalues, double t)
{
    const int n = static_cast<int>(eigenvalues.size());
    if (n < 2) throw ConfigError("alpha0_from_spectrum: need at least 2 levels");
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n; ++j) {
        re += std::cos(eigenvalues[j] * t);
        im -= std::sin(eigenvalues[j] * t);
    }
    const double f2 = (re * re + im * im) / (static_cast<double>(n) * n);
    const double n2 = static_cast<double>(n) * n;
    return (n2 * f2 - 1.0) / (n2 - 1.0);
}

double alpha0_largeN(double t)
{
    const double r = j1_ratio(t);
    return r * r;
}

}  // namespace rmtq
