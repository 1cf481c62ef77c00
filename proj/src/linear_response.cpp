// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmtq/linear_response.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmtq/errors.hpp"
#include "rmtq/haar_moments.hpp"
#include "rmtq/special_functions.hpp"
#include "rmtq/spectral_oracles.hpp"

namespace rmtq {

namespace {

using Eigen::VectorXd;

// The eight distinct |time arguments| feeding the component tables:
//   u = { t, t', t'', t-t', t-t'', t'-t'', t-t'+t'', t-t'-t'' }
struct BCache {
    double b[8];
};

BCache b_cache(double t, double tp, double tpp, const Kernel& k)
{
    BCache c;
    c.b[0] = k.b1(t);
    c.b[1] = k.b1(tp);
    c.b[2] = k.b1(tpp);
    c.b[3] = k.b1(t - tp);
    c.b[4] = k.b1(t - tpp);
    c.b[5] = k.b1(tp - tpp);
    c.b[6] = k.b1(t - tp + tpp);
    c.b[7] = k.b1(t - tp - tpp);
    return c;
}

// Component tables written against the cache (b1 is even, so only the
// combination |argument| matters).
void f_tables(const BCache& c, double p2, double p3, double p4, double two_n,
              double* f1, double* f2)
{
    const double bt = c.b[0], btp = c.b[1], btpp = c.b[2];
    const double bttp = c.b[3], bttpp = c.b[4], btptpp = c.b[5];
    const double bplus = c.b[6];   // |t - t' + t''|
    const double bminus = c.b[7];  // |t - t' - t''|

    // A^(1)
    f1[0] = two_n;
    f1[1] = p2 * btpp * btpp;                 // F(t'')
    f1[2] = p2 * btptpp * btptpp;             // F(t'-t'')
    f1[3] = p2 * bttp * bttp;                 // F(t-t')
    f1[4] = p2 * bt * bt;                     // F(t)
    f1[5] = p2 * btp * btp;                   // F(t')
    f1[6] = p2 * bplus * bplus;               // F(t-t'+t'')
    f1[7] = p2 * bttpp * bttpp;               // F(t-t'')
    f1[8] = p3 * btp * btptpp * btpp;         // G(t', t''-t', t'')
    f1[9] = p3 * bplus * bttp * btpp;         // G(t+t''-t', t'-t, t'')
    f1[10] = p3 * bttpp * bttp * btptpp;      // G(t-t'', t'-t, t''-t')
    f1[11] = p3 * bt * bttpp * btpp;          // G(t, t''-t, t'')
    f1[12] = p3 * bt * bplus * btptpp;        // G(t, -t+t'-t'', t''-t')
    f1[13] = p3 * bt * bttp * btp;            // G(t, t'-t, t')
    f1[14] = p4 * bt * bttp * btptpp * btpp;  // H(t, t', t'')

    // A^(2)
    f2[0] = two_n;
    f2[1] = p2 * btpp * btpp;                 // F(t'')
    f2[2] = p2 * btp * btp;                   // F(t')
    f2[3] = p2 * bttp * bttp;                 // F(t-t')
    f2[4] = p2 * bttpp * bttpp;               // F(t''-t)
    f2[5] = p2 * btptpp * btptpp;             // F(t''-t')
    f2[6] = p2 * bminus * bminus;             // F(t''-t+t')
    f2[7] = p2 * bt * bt;                     // F(t)
    f2[8] = p3 * btpp * btptpp * btp;         // G(t'', t'-t'', t')
    f2[9] = p3 * btpp * bminus * bttp;        // G(t'', -t''+t-t', t'-t)
    f2[10] = p3 * bt * bttp * btp;            // G(t, t'-t, t')
    f2[11] = p3 * btpp * bttpp * bt;          // G(t'', t-t'', t)
    f2[12] = p3 * bminus * bttpp * btp;       // G(t''+t'-t, t-t'', t')
    f2[13] = p3 * btptpp * bttpp * bttp;      // G(t''-t', t-t'', t'-t)
    f2[14] = p4 * btpp * bttpp * bttp * btp;  // H(t'', t, t')
}

struct ContractedWeights {
    std::array<double, 15> w1{}, w2{};
    double p2 = 0, p3 = 0, p4 = 0, two_n = 0;
};

ContractedWeights weights_for(long N)
{
    if (N < 2) throw ConfigError("alpha2: N must be >= 2");
    const auto [v1, v2] = ctm_vectors(N);
    ContractedWeights w;
    for (int i = 0; i < 15; ++i) {
        w.w1[i] = to_double(v1[i]);
        w.w2[i] = to_double(v2[i]);
    }
    const double n2 = 2.0 * static_cast<double>(N);
    w.two_n = n2;
    w.p2 = n2 * (n2 - 1.0);
    w.p3 = w.p2 * (n2 - 2.0);
    w.p4 = w.p3 * (n2 - 3.0);
    return w;
}

// Composite Simpson over [0, upper] with an even interval count near
// upper/h; integrand evaluated through f(x).
template <typename F>
double simpson(double upper, double h, F&& f)
{
    if (upper <= 0.0) return 0.0;
    int n = std::max(2, 2 * static_cast<int>(std::ceil(upper / (2.0 * h))));
    const double dx = upper / n;
    double acc = f(0.0) + f(upper);
    for (int i = 1; i < n; ++i) {
        acc += f(i * dx) * ((i % 2 == 1) ? 4.0 : 2.0);
    }
    return acc * dx / 3.0;
}

// Triangular-domain iterated Simpson of g(t', t'') over 0 <= t'' <= t' <= t.
template <typename G>
double triangle_integral(double t, double h, G&& g)
{
    return simpson(t, h, [&](double tp) {
        return simpson(tp, h, [&](double tpp) { return g(tp, tpp); });
    });
}

template <typename G>
double richardson_triangle(double t, const QuadratureSpec& quad, G&& g,
                           const char* what)
{
    if (t == 0.0) return 0.0;
    double h = std::min(quad.step, t / 200.0);
    double coarse = triangle_integral(t, h, g);
    for (int r = 0; r <= quad.max_refinements; ++r) {
        const double fine = triangle_integral(t, 0.5 * h, g);
        const double err = std::abs(fine - coarse) / 15.0;
        if (err <= quad.tolerance) {
            return fine + (fine - coarse) / 15.0;  // Richardson extrapolant
        }
        h *= 0.5;
        coarse = fine;
    }
    throw NumericError(std::string(what) + ": quadrature tolerance not met");
}

}  // namespace

double Kernel::b1(double x) const
{
    switch (kind) {
        case Kind::Semicircle:
            return j1_ratio(x);
        case Kind::Gaussian:
            return std::exp(-0.5 * x * x);
    }
    return 0.0;
}

double aux_f(double x, long N, const Kernel& kernel)
{
    if (N < 2) throw ConfigError("aux_f: N must be >= 2");
    const double n2 = 2.0 * N;
    const double b = kernel.b1(x);
    return n2 * (n2 - 1.0) * b * b;
}

double aux_g(double x, double y, double z, long N, const Kernel& kernel)
{
    if (N < 2) throw ConfigError("aux_g: N must be >= 2");
    const double n2 = 2.0 * N;
    return n2 * (n2 - 1.0) * (n2 - 2.0) * kernel.b1(x) * kernel.b1(y) * kernel.b1(z);
}

double aux_h(double x, double y, double z, long N, const Kernel& kernel)
{
    if (N < 2) throw ConfigError("aux_h: N must be >= 2");
    const double n2 = 2.0 * N;
    return n2 * (n2 - 1.0) * (n2 - 2.0) * (n2 - 3.0) * kernel.b1(x) *
           kernel.b1(y - x) * kernel.b1(z - y) * kernel.b1(z);
}

std::array<double, 15> f_components(double t, double tp, double tpp, long N,
                                    const Kernel& kernel, int which)
{
    if (N < 2) throw ConfigError("f_components: N must be >= 2");
    if (which != 1 && which != 2) throw ConfigError("f_components: which must be 1 or 2");
    if (!(0.0 <= tpp && tpp <= tp && tp <= t)) {
        throw ConfigError("f_components: need 0 <= t'' <= t' <= t");
    }
    const double n2 = 2.0 * N;
    const double p2 = n2 * (n2 - 1.0);
    const double p3 = p2 * (n2 - 2.0);
    const double p4 = p3 * (n2 - 3.0);
    const BCache c = b_cache(t, tp, tpp, kernel);
    double f1[15], f2[15];
    f_tables(c, p2, p3, p4, n2, f1, f2);
    std::array<double, 15> out;
    const double* src = (which == 1) ? f1 : f2;
    std::copy(src, src + 15, out.begin());
    return out;
}

double alpha2(double t, long N, const Kernel& kernel, const QuadratureSpec& quad)
{
    if (t < 0.0) throw ConfigError("alpha2: t must be >= 0");
    const ContractedWeights w = weights_for(N);
    auto integrand = [&](double tp, double tpp) {
        const BCache c = b_cache(t, tp, tpp, kernel);
        double f1[15], f2[15];
        f_tables(c, w.p2, w.p3, w.p4, w.two_n, f1, f2);
        double a1 = 0.0, a2 = 0.0;
        for (int i = 0; i < 15; ++i) {
            a1 += w.w1[i] * f1[i];
            a2 += w.w2[i] * f2[i];
        }
        return a1 - a2;
    };
    return richardson_triangle(t, quad, integrand, "alpha2") / static_cast<double>(N);
}

double alpha2_largeN(double t, const Kernel& kernel, const QuadratureSpec& quad)
{
    if (t < 0.0) throw ConfigError("alpha2_largeN: t must be >= 0");
    auto integrand = [&](double tp, double tpp) {
        return kernel.b1(t) * kernel.b1(tp - t - tpp) * kernel.b1(tpp - tp) -
               kernel.b1(tpp) * kernel.b1(t - tpp) * kernel.b1(tp - t) * kernel.b1(tp);
    };
    return 2.0 * richardson_triangle(t, quad, integrand, "alpha2_largeN");
}

double alpha2_gpue_closed(double t)
{
    const double e = erf_accurate(0.5 * t);
    return std::sqrt(M_PI) * t * std::exp(-0.75 * t * t) * e -
           M_PI * std::exp(-0.5 * t * t) * e * e;
}

double alpha_lr_strong(double t, double s, int N)
{
    if (s < 0.0) throw ConfigError("alpha_lr_strong: s must be >= 0");
    if (s == 0.0) return alpha0_exact(t, N);
    return alpha0_exact(t, N) - s * s * alpha2(t, N, Kernel::semicircle());
}

double alpha_lr_strong_largeN(double t, double s)
{
    if (s < 0.0) throw ConfigError("alpha_lr_strong_largeN: s must be >= 0");
    if (s == 0.0) return alpha0_largeN(t);
    return alpha0_largeN(t) - s * s * alpha2_largeN(t, Kernel::semicircle());
}

CompositeAlpha composite_alpha(const Eigen::VectorXd& times, double s, int N,
                               std::uint64_t master_seed, int sub_ensemble,
                               int workers)
{
    (void)workers;
    if (times.size() == 0) throw ConfigError("composite_alpha: empty grid");
    if (!(s > 0.0)) throw ConfigError("composite_alpha: s must be > 0");
    const double t_max = times[times.size() - 1];

    // cutoff: median eigenphase time over a small sub-ensemble
    std::vector<double> cuts;
    const int scan_points = std::max(2, static_cast<int>(std::ceil(t_max / 0.05)) + 1);
    VectorXd scan_grid = VectorXd::LinSpaced(scan_points, 0.0, t_max);
    for (int r = 0; r < sub_ensemble; ++r) {
        const auto h_env = sample_gue(EnsembleSpec::gue_unit_trace(N),
                                      derive_stream(master_seed, 2 * r));
        const auto v = sample_gue(EnsembleSpec::gue_unit_trace(2 * N),
                                  derive_stream(master_seed, 2 * r + 1));
        const auto cut = echo_eigenphase_cutoff(h_env, v, s, scan_grid);
        cuts.push_back(cut.value_or(2.0 * t_max + 1.0));
    }
    std::sort(cuts.begin(), cuts.end());
    const double t_cut = cuts[cuts.size() / 2];

    CompositeAlpha out;
    out.t_cut = t_cut;
    out.cutoff_reached = t_cut <= t_max;

    // linear-response values on the grid (always needed up to t_cut, and
    // beyond it when the tail fit falls back)
    VectorXd lr(times.size());
    for (int i = 0; i < times.size(); ++i) {
        lr[i] = alpha_lr_strong(times[i], s, N);
    }

    out.trace.times = times;
    out.trace.alpha = lr;
    out.lr_alpha = lr;
    out.trace.meta = TraceMeta{ModelParams{N, s, 0.0}, sub_ensemble, master_seed};

    if (!out.cutoff_reached) return out;

    // exponential tail: log-linear fit on [0.8 t_cut, t_cut]
    std::vector<int> window;
    for (int i = 0; i < times.size(); ++i) {
        if (times[i] >= 0.8 * t_cut && times[i] <= t_cut) window.push_back(i);
    }
    bool positive = window.size() >= 2;
    for (int i : window) positive = positive && lr[i] > 0.0;
    if (!positive) {
        out.tail_fitted = false;  // flagged: continue LR past the cutoff
        return out;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i : window) {
        const double x = times[i], y = std::log(lr[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(window.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    out.gamma = -slope;
    out.tail_fitted = true;

    // anchor at t_cut for continuity
    const double anchor = alpha_lr_strong(t_cut, s, N);
    for (int i = 0; i < times.size(); ++i) {
        if (times[i] >= t_cut) {
            out.trace.alpha[i] = anchor * std::exp(-out.gamma * (times[i] - t_cut));
        }
    }
    return out;
}

double g_of_t(double t, double tau_h)
{
    if (!(tau_h > 0.0)) throw ConfigError("g_of_t: tau_h must be > 0");
    const double lo = std::min(t, tau_h), hi = std::max(t, tau_h);
    return 2.0 * t * hi + 2.0 / (3.0 * tau_h) * lo * lo * lo;
}

double p_lr(double t, double lambda, double tau_h)
{
    if (lambda < 0.0) throw ConfigError("p_lr: lambda must be >= 0");
    return 1.0 - lambda * lambda * g_of_t(t, tau_h);
}

double p_elr(double t, double lambda, double tau_h)
{
    if (lambda < 0.0) throw ConfigError("p_elr: lambda must be >= 0");
    return 0.5 + 0.5 * std::exp(-0.5 * lambda * lambda * g_of_t(t, tau_h));
}

double alpha_weak(double t, double lambda, double tau_h)
{
    if (lambda < 0.0) throw ConfigError("alpha_weak: lambda must be >= 0");
    return std::exp(-0.5 * lambda * lambda * g_of_t(t, tau_h));
}

double lambda_from_s(double s, long N)
{
    if (!(s > 0.0)) throw ConfigError("lambda_from_s: s must be > 0");
    return 1.0 / (s * static_cast<double>(N));
}

}  // namespace rmtq
