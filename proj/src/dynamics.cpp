// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmtq/dynamics.hpp"

#include <lapacke.h>

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "rmtq/errors.hpp"

namespace rmtq {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

void validate_times(const VectorXd& times)
{
    if (times.size() == 0) throw ConfigError("empty time grid");
    for (int i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw ConfigError("time grid must be ascending");
    }
}

// |Q_a^dagger Q_a|-style squared transfer matrices for the Pauli generators.
// With Q split into its top/bottom N-row blocks,
//   P1 = X + X^dagger, P2 = i (X^dagger - X), P3 = 2 Y - 1,
// where X = Q_a^dagger Q_b and Y = Q_a^dagger Q_a.
struct PauliInEigenbasis {
    MatrixXcd p1, p2, p3;
};

PauliInEigenbasis pauli_in_eigenbasis(const MatrixXcd& q)
{
    const int n2 = static_cast<int>(q.rows());
    const int n = n2 / 2;
    const auto qa = q.topRows(n);
    const auto qb = q.bottomRows(n);
    const MatrixXcd x = qa.adjoint() * qb;
    const MatrixXcd y = qa.adjoint() * qa;
    PauliInEigenbasis p;
    p.p1 = x + x.adjoint();
    p.p2 = Complex(0, 1) * (x.adjoint() - x);
    p.p3 = 2.0 * y - MatrixXcd::Identity(n2, n2);
    return p;
}

// alpha-style diagonal channel entry from the squared magnitudes
// M = |P|^2: L_jj(t) = (c^T M c + s^T M s) / 2N with c = cos(lambda t),
// s = sin(lambda t).
VectorXd diagonal_entry_trace(const MatrixXd& msq, const VectorXd& eigs,
                              const VectorXd& times)
{
    const int n2 = static_cast<int>(eigs.size());
    VectorXd out(times.size());
    VectorXd c(n2), s(n2);
    for (int k = 0; k < times.size(); ++k) {
        const double t = times[k];
        for (int i = 0; i < n2; ++i) {
            c[i] = std::cos(eigs[i] * t);
            s[i] = std::sin(eigs[i] * t);
        }
        out[k] = (c.dot(msq * c) + s.dot(msq * s)) / n2;
    }
    return out;
}

struct MeanStderr {
    MatrixXd mean;     // K x T
    MatrixXd stderr_;  // K x T
};

// Deterministic ensemble reduction: per-realization traces are stored by
// index and combined in index order regardless of which worker produced them.
MeanStderr run_ensemble(int realizations, int workers, int rows, int cols,
                        const std::function<MatrixXd(int)>& produce)
{
    if (realizations < 1) throw ConfigError("realizations must be >= 1");
    std::vector<MatrixXd> results(realizations);
    if (workers <= 1) {
        for (int r = 0; r < realizations; ++r) results[r] = produce(r);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        auto body = [&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= realizations) return;
                try {
                    results[r] = produce(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(body);
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    MeanStderr out;
    out.mean = MatrixXd::Zero(rows, cols);
    for (const auto& m : results) out.mean += m;
    out.mean /= realizations;
    out.stderr_ = MatrixXd::Zero(rows, cols);
    if (realizations > 1) {
        for (const auto& m : results) {
            out.stderr_ += (m - out.mean).cwiseAbs2();
        }
        out.stderr_ = (out.stderr_ /
                       (static_cast<double>(realizations) * (realizations - 1)))
                          .cwiseSqrt();
    }
    return out;
}

HermitianMatrix sample_strong_hamiltonian(const ModelParams& params, int realization,
                                          std::uint64_t master_seed)
{
    const int n2 = 2 * params.N;
    const auto v = sample_gue(EnsembleSpec::gue_unit_trace(n2),
                              derive_stream(master_seed, 2 * realization + 1));
    if (params.s == 0.0 && params.omega == 0.0) return v;
    const auto h_env = sample_gue(EnsembleSpec::gue_unit_trace(params.N),
                                  derive_stream(master_seed, 2 * realization));
    return assemble_hamiltonian(params, h_env, v);
}

}  // namespace

SpectralDecomposition decompose(const HermitianMatrix& h)
{
    const int n = h.dim();
    SpectralDecomposition d;
    d.eigenvalues.resize(n);
    d.eigenvectors = h.matrix();
    const int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(d.eigenvectors.data()), n,
        d.eigenvalues.data());
    if (info != 0) {
        // zheevd occasionally fails on difficult inputs; retry with Eigen's
        // QR-based solver before reporting.
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h.matrix());
        if (es.info() != Eigen::Success) {
            throw NumericError("eigensolver failed to converge (zheevd info=" +
                               std::to_string(info) + ")");
        }
        d.eigenvalues = es.eigenvalues();
        d.eigenvectors = es.eigenvectors();
    }
    return d;
}

HermitianMatrix assemble_hamiltonian(const ModelParams& params,
                                     const HermitianMatrix& h_env,
                                     const HermitianMatrix& coupling)
{
    const int n = params.N;
    if (n < 1) throw ConfigError("assemble_hamiltonian: N must be >= 1");
    if (h_env.dim() != n || coupling.dim() != 2 * n) {
        throw ConfigError("assemble_hamiltonian: dimension mismatch");
    }
    MatrixXcd h = coupling.matrix();
    h.topLeftCorner(n, n) += params.s * h_env.matrix();
    h.bottomRightCorner(n, n) += params.s * h_env.matrix();
    for (int i = 0; i < n; ++i) {
        h(i, i) += params.omega;
        h(n + i, n + i) -= params.omega;
    }
    return HermitianMatrix::from_symmetrized(h);
}

PauliTransferMatrix channel_matrix(const SpectralDecomposition& decomp, double t)
{
    const int n2 = static_cast<int>(decomp.eigenvalues.size());
    if (n2 < 2 || n2 % 2 != 0) throw ConfigError("channel_matrix: need a 2N-dim system");
    const auto p = pauli_in_eigenbasis(decomp.eigenvectors);

    VectorXcd z(n2);
    for (int i = 0; i < n2; ++i) {
        z[i] = std::polar(1.0, decomp.eigenvalues[i] * t);
    }
    const VectorXcd zc = z.conjugate();
    const MatrixXcd pt[4] = {MatrixXcd::Identity(n2, n2), p.p1, p.p2, p.p3};

    PauliTransferMatrix out;
    for (int k = 0; k < 4; ++k) {
        const MatrixXcd ek = zc.asDiagonal() * pt[k] * z.asDiagonal();
        for (int j = 0; j < 4; ++j) {
            const Complex val = (pt[j].transpose().cwiseProduct(ek)).sum() / double(n2);
            if (std::abs(val.imag()) > 1e-10 || !std::isfinite(val.real())) {
                throw NumericError("channel_matrix: non-real or non-finite entry");
            }
            out.m(j, k) = val.real();
        }
    }
    return out;
}

AlphaTrace alpha_single(const SpectralDecomposition& decomp, const VectorXd& times)
{
    validate_times(times);
    const int n2 = static_cast<int>(decomp.eigenvalues.size());
    if (n2 < 2 || n2 % 2 != 0) throw ConfigError("alpha_single: need a 2N-dim system");
    const int n = n2 / 2;
    const auto qa = decomp.eigenvectors.topRows(n);
    const MatrixXcd y = qa.adjoint() * qa;
    const MatrixXcd p3 = 2.0 * y - MatrixXcd::Identity(n2, n2);
    const MatrixXd msq = p3.cwiseAbs2();

    AlphaTrace trace;
    trace.times = times;
    trace.alpha = diagonal_entry_trace(msq, decomp.eigenvalues, times);
    return trace;
}

double purity_of_alpha(double alpha)
{
    if (std::abs(alpha) > 1.0 + 1e-12) {
        throw ConfigError("purity_of_alpha: |alpha| must be <= 1");
    }
    return 0.5 * (1.0 + alpha * alpha);
}

VectorXd alpha_realization(const ModelParams& params, const VectorXd& times,
                           int realization, std::uint64_t master_seed)
{
    if (params.omega != 0.0) {
        throw ConfigError("alpha_realization: omega != 0 needs the channel diagonal");
    }
    const auto h = sample_strong_hamiltonian(params, realization, master_seed);
    return alpha_single(decompose(h), times).alpha;
}

AlphaTrace ensemble_alpha(const ModelParams& params, const VectorXd& times,
                          int realizations, std::uint64_t master_seed, int workers)
{
    validate_times(times);
    const auto ms = run_ensemble(
        realizations, workers, 1, static_cast<int>(times.size()), [&](int r) {
            return MatrixXd(alpha_realization(params, times, r, master_seed).transpose());
        });
    AlphaTrace trace;
    trace.times = times;
    trace.alpha = ms.mean.row(0);
    trace.stderr_ = ms.stderr_.row(0);
    trace.meta = TraceMeta{params, realizations, master_seed};
    return trace;
}

Eigen::MatrixXd channel_diag_realization(const ModelParams& params,
                                         const VectorXd& times, int realization,
                                         std::uint64_t master_seed)
{
    const auto h = sample_strong_hamiltonian(params, realization, master_seed);
    const auto d = decompose(h);
    const auto p = pauli_in_eigenbasis(d.eigenvectors);
    MatrixXd traces(2, times.size());
    const VectorXd xx = diagonal_entry_trace(p.p1.cwiseAbs2(), d.eigenvalues, times);
    const VectorXd yy = diagonal_entry_trace(p.p2.cwiseAbs2(), d.eigenvalues, times);
    const VectorXd zz = diagonal_entry_trace(p.p3.cwiseAbs2(), d.eigenvalues, times);
    traces.row(0) = 0.5 * (xx + yy);
    traces.row(1) = zz;
    return traces;
}

ChannelDiagonalTrace ensemble_channel_diagonal(const ModelParams& params,
                                               const VectorXd& times,
                                               int realizations,
                                               std::uint64_t master_seed, int workers)
{
    validate_times(times);
    const int tn = static_cast<int>(times.size());
    const auto ms = run_ensemble(realizations, workers, 2, tn, [&](int r) {
        return channel_diag_realization(params, times, r, master_seed);
    });
    ChannelDiagonalTrace out;
    out.times = times;
    out.alpha_depol = ms.mean.row(0);
    out.alpha_z = ms.mean.row(1);
    out.stderr_depol = ms.stderr_.row(0);
    out.stderr_z = ms.stderr_.row(1);
    out.meta = TraceMeta{params, realizations, master_seed};
    return out;
}

VectorXd alpha_realization_weak(int N, double lambda, const VectorXd& times,
                                int realization, std::uint64_t master_seed)
{
    if (N < 1) throw ConfigError("alpha_realization_weak: N must be >= 1");
    const auto h_env = sample_gue(EnsembleSpec::gue_unit_trace(N),
                                  derive_stream(master_seed, 2 * realization));
    const auto v = sample_gue(EnsembleSpec::gue(2 * N, 1.0),
                              derive_stream(master_seed, 2 * realization + 1));
    MatrixXcd m = lambda * v.matrix();
    m.topLeftCorner(N, N) += h_env.matrix();
    m.bottomRightCorner(N, N) += h_env.matrix();
    return alpha_single(decompose(HermitianMatrix::from_symmetrized(m)), times).alpha;
}

AlphaTrace ensemble_alpha_weak(int N, double lambda, const VectorXd& times,
                               int realizations, std::uint64_t master_seed, int workers)
{
    validate_times(times);
    const auto ms = run_ensemble(
        realizations, workers, 1, static_cast<int>(times.size()), [&](int r) {
            return MatrixXd(
                alpha_realization_weak(N, lambda, times, r, master_seed).transpose());
        });
    AlphaTrace trace;
    trace.times = times;
    trace.alpha = ms.mean.row(0);
    trace.stderr_ = ms.stderr_.row(0);
    trace.meta = TraceMeta{ModelParams{N, lambda, 0.0}, realizations, master_seed};
    return trace;
}

std::optional<double> echo_eigenphase_cutoff(const HermitianMatrix& h_env,
                                             const HermitianMatrix& coupling,
                                             double s, const VectorXd& time_grid)
{
    validate_times(time_grid);
    const int n2 = coupling.dim();
    if (h_env.dim() * 2 != n2) throw ConfigError("echo cutoff: dimension mismatch");

    ModelParams params;
    params.N = h_env.dim();
    params.s = s;
    const auto full = assemble_hamiltonian(params, h_env, coupling);
    const auto dv = decompose(coupling);
    const auto dh = decompose(full);
    const MatrixXcd w = dv.eigenvectors.adjoint() * dh.eigenvectors;

    double prev_max = 0.0;
    bool have_prev = false;
    std::vector<Complex> eigs(n2);
    for (int k = 0; k < time_grid.size(); ++k) {
        const double t = time_grid[k];
        VectorXcd zv(n2), zh(n2);
        for (int i = 0; i < n2; ++i) {
            zv[i] = std::polar(1.0, dv.eigenvalues[i] * t);
            zh[i] = std::polar(1.0, -dh.eigenvalues[i] * t);
        }
        // echo in the V eigenbasis: diag(e^{ivt}) W diag(e^{-i lambda t}) W^dagger
        MatrixXcd echo = zv.asDiagonal() * (w * zh.asDiagonal() * w.adjoint());
        const int info = LAPACKE_zgeev(
            LAPACK_COL_MAJOR, 'N', 'N', n2,
            reinterpret_cast<lapack_complex_double*>(echo.data()), n2,
            reinterpret_cast<lapack_complex_double*>(eigs.data()), nullptr, 1, nullptr,
            1);
        if (info != 0) throw NumericError("zgeev failed on the echo operator");

        double max_phase = 0.0;
        for (const Complex& e : eigs) max_phase = std::max(max_phase, std::abs(std::arg(e)));

        if (have_prev) {
            const double step = std::abs(max_phase - prev_max);
            // hitting pi, or wrapping past it between samples
            if (max_phase >= M_PI - std::max(step, 1e-9) ||
                max_phase < prev_max - 0.5 * M_PI) {
                return t;
            }
        } else if (max_phase >= M_PI - 1e-9) {
            return t;
        }
        prev_max = max_phase;
        have_prev = true;
    }
    return std::nullopt;
}

}  // namespace rmtq
