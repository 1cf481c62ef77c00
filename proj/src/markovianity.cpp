// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmtq/markovianity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "rmtq/errors.hpp"
#include "rmtq/rng.hpp"

namespace rmtq {

namespace {

using Eigen::VectorXd;

NMResult measure_on_series(const VectorXd& times, const VectorXd& alpha,
                           std::pair<double, double> window)
{
    if (window.second <= window.first) throw ConfigError("nm_measure: empty window");
    if (times.size() != alpha.size() || times.size() < 2) {
        throw ConfigError("nm_measure: trace too short");
    }
    const double eps = 1e-12;
    if (times[0] > window.first + eps ||
        times[times.size() - 1] < window.second - eps) {
        throw ConfigError("nm_measure: trace grid does not cover the window");
    }

    NMResult out;
    out.window = window;
    bool in_rise = false;
    RiseSegment seg;
    for (int k = 0; k + 1 < times.size(); ++k) {
        if (times[k] < window.first - eps || times[k + 1] > window.second + eps)
            continue;
        const double d = alpha[k + 1] - alpha[k];
        if (d > 0.0) {
            if (!in_rise) {
                in_rise = true;
                seg = RiseSegment{times[k], times[k + 1], d};
            } else {
                seg.t_end = times[k + 1];
                seg.delta_alpha += d;
            }
            out.measure += 2.0 * d;
        } else if (in_rise) {
            out.rise_segments.push_back(seg);
            in_rise = false;
        }
    }
    if (in_rise) out.rise_segments.push_back(seg);
    return out;
}

// Expected measure of pure noise: the same functional applied to
// stderr-scaled white noise, averaged over a few fixed-seed draws.
double noise_floor_estimate(const VectorXd& times, const VectorXd& stderr_,
                            std::pair<double, double> window,
                            std::uint64_t master_seed)
{
    if (stderr_.size() != times.size() || stderr_.maxCoeff() <= 0.0) return 0.0;
    const int draws = 8;
    double acc = 0.0;
    for (int d = 0; d < draws; ++d) {
        GaussianSource gauss(derive_stream(master_seed ^ 0x6e6f697365ULL, d));
        VectorXd noise(times.size());
        for (int i = 0; i < times.size(); ++i) noise[i] = stderr_[i] * gauss();
        acc += measure_on_series(times, noise, window).measure;
    }
    return acc / draws;
}

}  // namespace

NMResult nm_measure(const AlphaTrace& trace, std::pair<double, double> window)
{
    return measure_on_series(trace.times, trace.alpha, window);
}

std::vector<NMPoint> nm_sweep(const std::vector<double>& s_values, int N,
                              int realizations, std::uint64_t master_seed,
                              const NMSweepOptions& options)
{
    if (s_values.empty()) throw ConfigError("nm_sweep: empty s grid");
    const auto [w0, w1] = options.window;
    if (!(w1 > w0)) throw ConfigError("nm_sweep: empty window");
    const int steps = static_cast<int>(std::round((w1 - w0) / options.dt));
    VectorXd times(steps + 1);
    for (int i = 0; i <= steps; ++i) times[i] = w0 + i * options.dt;

    std::vector<NMPoint> out;
    for (std::size_t si = 0; si < s_values.size(); ++si) {
        ModelParams params;
        params.N = N;
        params.s = s_values[si];
        params.omega = options.omega;
        // each s owns its stream indices through a distinct derived seed
        const std::uint64_t seed = splitmix64(master_seed + si);

        VectorXd mean, stderr_;
        std::vector<VectorXd> per_realization(realizations);
        auto one_realization = [&](int r) -> VectorXd {
            if (options.omega == 0.0) return alpha_realization(params, times, r, seed);
            return channel_diag_realization(params, times, r, seed).row(0);
        };
        if (options.workers <= 1) {
            for (int r = 0; r < realizations; ++r) per_realization[r] = one_realization(r);
        } else {
            std::atomic<int> next{0};
            auto body = [&] {
                for (;;) {
                    const int r = next.fetch_add(1);
                    if (r >= realizations) return;
                    per_realization[r] = one_realization(r);
                }
            };
            std::vector<std::thread> pool;
            for (int w = 0; w < options.workers; ++w) pool.emplace_back(body);
            for (auto& th : pool) th.join();
        }

        mean = VectorXd::Zero(times.size());
        for (const auto& v : per_realization) mean += v;
        mean /= realizations;
        stderr_ = VectorXd::Zero(times.size());
        if (realizations > 1) {
            for (const auto& v : per_realization) stderr_ += (v - mean).cwiseAbs2();
            stderr_ = (stderr_ / (double(realizations) * (realizations - 1))).cwiseSqrt();
        }

        AlphaTrace trace;
        trace.times = times;
        trace.alpha = mean;
        trace.stderr_ = stderr_;
        const NMResult res = nm_measure(trace, options.window);

        // leave-one-block-out jackknife over realization blocks
        const int blocks = std::min(10, realizations);
        double jk = 0.0;
        if (blocks >= 2) {
            std::vector<double> mvals;
            for (int b = 0; b < blocks; ++b) {
                VectorXd acc = VectorXd::Zero(times.size());
                int count = 0;
                for (int r = 0; r < realizations; ++r) {
                    if (r % blocks == b) continue;
                    acc += per_realization[r];
                    ++count;
                }
                acc /= count;
                AlphaTrace sub;
                sub.times = times;
                sub.alpha = acc;
                mvals.push_back(nm_measure(sub, options.window).measure);
            }
            double mbar = 0.0;
            for (double v : mvals) mbar += v;
            mbar /= blocks;
            double var = 0.0;
            for (double v : mvals) var += (v - mbar) * (v - mbar);
            jk = std::sqrt(var * (blocks - 1) / blocks);
        }

        NMPoint point;
        point.s = params.s;
        point.measure = res.measure;
        point.stderr_ = jk;
        point.noise_floor = noise_floor_estimate(times, stderr_, options.window, seed);
        point.consistent_with_zero = point.measure <= point.noise_floor;
        out.push_back(point);
    }
    return out;
}

std::optional<double> detect_transition(
    const std::vector<std::pair<double, double>>& curve, double threshold)
{
    if (curve.empty()) throw ConfigError("detect_transition: empty curve");
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (curve[i].first <= curve[i - 1].first) {
            throw ConfigError("detect_transition: s values must ascend");
        }
    }
    // smallest index from which the curve stays below threshold
    std::size_t idx = curve.size();
    for (std::size_t i = curve.size(); i-- > 0;) {
        if (curve[i].second < threshold) {
            idx = i;
        } else {
            break;
        }
    }
    if (idx == curve.size()) return std::nullopt;
    if (idx == 0) return curve.front().first;
    const auto [s0, m0] = curve[idx - 1];
    const auto [s1, m1] = curve[idx];
    return s0 + (m0 - threshold) * (s1 - s0) / (m0 - m1);
}

std::optional<double> detect_transition(const std::vector<NMPoint>& sweep,
                                        double threshold)
{
    std::vector<std::pair<double, double>> curve;
    curve.reserve(sweep.size());
    for (const auto& p : sweep) curve.emplace_back(p.s, p.measure);
    return detect_transition(curve, threshold);
}

}  // namespace rmtq
