// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmtq/haar_moments.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "rmtq/errors.hpp"

namespace rmtq {

namespace {

using Perm = std::array<int, 4>;

std::vector<Perm> permutations_of(int q)
{
    std::array<int, 4> base{0, 1, 2, 3};
    std::vector<Perm> out;
    std::vector<int> idx(base.begin(), base.begin() + q);
    std::sort(idx.begin(), idx.end());
    do {
        Perm p{0, 1, 2, 3};
        for (int i = 0; i < q; ++i) p[i] = idx[i];
        out.push_back(p);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

Perm compose(const Perm& a, const Perm& b, int q)  // (a*b)(i) = a[b[i]]
{
    Perm c{0, 1, 2, 3};
    for (int i = 0; i < q; ++i) c[i] = a[b[i]];
    return c;
}

Perm invert(const Perm& a, int q)
{
    Perm inv{0, 1, 2, 3};
    for (int i = 0; i < q; ++i) inv[a[i]] = i;
    return inv;
}

std::vector<int> cycle_type_of(const Perm& p, int q)
{
    std::array<bool, 4> seen{};
    std::vector<int> type;
    for (int i = 0; i < q; ++i) {
        if (!seen[i]) {
            int len = 0, j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = p[j];
                ++len;
            }
            type.push_back(len);
        }
    }
    std::sort(type.begin(), type.end(), std::greater<int>());
    return type;
}

int num_cycles(const Perm& p, int q)
{
    return static_cast<int>(cycle_type_of(p, q).size());
}

// ---- exact dense rational linear algebra (tiny matrices only) -------------

using RMat = std::vector<std::vector<Rational>>;

RMat rmat(int rows, int cols) { return RMat(rows, std::vector<Rational>(cols, 0)); }

RMat rmul(const RMat& a, const RMat& b)
{
    const int n = static_cast<int>(a.size());
    const int k = static_cast<int>(b.size());
    const int m = static_cast<int>(b[0].size());
    RMat c = rmat(n, m);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

RMat rtranspose(const RMat& a)
{
    RMat t = rmat(static_cast<int>(a[0].size()), static_cast<int>(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

// Gauss-Jordan inverse; throws NumericError on a singular input.
RMat rinverse(RMat a)
{
    const int n = static_cast<int>(a.size());
    RMat inv = rmat(n, n);
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) throw NumericError("rational inverse: singular matrix");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        const Rational d = a[col][col];
        for (int j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

// Column indices of a maximal independent column set.
std::vector<int> pivot_columns(RMat a)
{
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        const Rational d = a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] /= d;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

// Moore-Penrose pseudo-inverse of a symmetric PSD rational matrix:
// with B a column-space basis, G = B X B^T and
// G+ = B (B^T B)^{-1} X^{-1} (B^T B)^{-1} B^T.
RMat rpseudo_inverse_sym(const RMat& g)
{
    const int n = static_cast<int>(g.size());
    const std::vector<int> piv = pivot_columns(g);
    if (static_cast<int>(piv.size()) == n) return rinverse(g);
    RMat b = rmat(n, static_cast<int>(piv.size()));
    for (int i = 0; i < n; ++i)
        for (size_t j = 0; j < piv.size(); ++j) b[i][j] = g[i][piv[j]];
    const RMat bt = rtranspose(b);
    const RMat btb_inv = rinverse(rmul(bt, b));
    const RMat x = rmul(rmul(btb_inv, rmul(bt, rmul(g, b))), btb_inv);
    const RMat mid = rmul(rmul(btb_inv, rinverse(x)), btb_inv);
    return rmul(b, rmul(mid, bt));
}

// Weingarten values for all of S_q at dimension n via the Gram matrix
// G_{sigma,tau} = n^{#cycles(sigma^{-1} tau)}; Wg(pi) = (G+)[e][pi].
std::vector<Rational> weingarten_by_gram(int q, long n)
{
    const auto perms = permutations_of(q);
    const int m = static_cast<int>(perms.size());
    RMat g = rmat(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int c = num_cycles(compose(invert(perms[i], q), perms[j], q), q);
            Rational v = 1;
            for (int k = 0; k < c; ++k) v *= n;
            g[i][j] = v;
        }
    const RMat ginv = rpseudo_inverse_sym(g);
    std::vector<Rational> wg(m);
    for (int j = 0; j < m; ++j) wg[j] = ginv[0][j];  // perms[0] is the identity
    return wg;
}

const std::vector<Rational>& cached_gram_weingarten(int q, long n)
{
    static std::map<std::pair<int, long>, std::vector<Rational>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(q, n);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, weingarten_by_gram(q, n)).first;
    return it->second;
}

}  // namespace

double to_double(const Rational& r) { return r.convert_to<double>(); }

const std::vector<Partition>& enumerate_partitions()
{
    static const std::vector<Partition> table = [] {
        // canonical patterns in the published enumeration order
        const std::array<std::array<int, 4>, 15> pat{{
            {0, 0, 0, 0},                                            // 1
            {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 1, 1, 1},  // 2..5
            {0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0},                // 6..8
            {0, 0, 1, 2}, {0, 1, 0, 2}, {0, 1, 2, 0},                // 9..11
            {0, 1, 1, 2}, {0, 1, 2, 1}, {0, 1, 2, 2},                // 12..14
            {0, 1, 2, 3},                                            // 15
        }};
        std::vector<Partition> out;
        for (int i = 0; i < 15; ++i) {
            Partition p;
            p.label = i + 1;
            p.block_of = pat[i];
            p.num_blocks = *std::max_element(pat[i].begin(), pat[i].end()) + 1;
            out.push_back(p);
        }
        return out;
    }();
    return table;
}

int partition_label(const std::array<long, 4>& values)
{
    std::array<int, 4> canon{};
    std::array<long, 4> seen{};
    int next = 0;
    for (int s = 0; s < 4; ++s) {
        int id = -1;
        for (int k = 0; k < next; ++k)
            if (seen[k] == values[s]) { id = k; break; }
        if (id < 0) {
            id = next;
            seen[next++] = values[s];
        }
        canon[s] = id;
    }
    for (const Partition& p : enumerate_partitions())
        if (p.block_of == canon) return p.label;
    throw NumericError("partition_label: unreachable");
}

Rational partition_multiplicity(const Partition& p, long n)
{
    Rational m = 1;
    for (int k = 0; k < p.num_blocks; ++k) m *= (n - k);
    return m;
}

int relabel_partition(int label, const std::array<int, 4>& slot_map)
{
    const Partition& p = enumerate_partitions().at(label - 1);
    std::array<long, 4> moved{};
    for (int s = 0; s < 4; ++s) moved[slot_map[s]] = p.block_of[s];
    return partition_label(moved);
}

Rational weingarten(int q, const std::vector<int>& cycle_type, long n)
{
    if (q < 1 || q > 4) throw ConfigError("weingarten: degree must be 1..4");
    const Rational nn = n;
    if (n >= q) {
        const Rational n2 = nn * nn;
        switch (q) {
            case 1:
                return 1 / nn;
            case 2: {
                const Rational d = n2 - 1;
                if (cycle_type == std::vector<int>{1, 1}) return 1 / d;
                return -1 / (nn * d);
            }
            case 3: {
                const Rational d = nn * (n2 - 1) * (n2 - 4);
                if (cycle_type == std::vector<int>{1, 1, 1}) return (n2 - 2) / d;
                if (cycle_type == std::vector<int>{2, 1}) return -nn / d;
                return 2 / d;
            }
            case 4: {
                const Rational d = n2 * (n2 - 1) * (n2 - 4) * (n2 - 9);
                if (cycle_type == std::vector<int>{1, 1, 1, 1})
                    return (n2 * n2 - 8 * n2 + 6) / d;
                if (cycle_type == std::vector<int>{2, 1, 1}) return -nn * (n2 - 4) / d;
                if (cycle_type == std::vector<int>{2, 2}) return (n2 + 6) / d;
                if (cycle_type == std::vector<int>{3, 1}) return (2 * n2 - 3) / d;
                return -5 * nn / d;  // {4}
            }
        }
    }
    // below the stable regime: exact pseudo-inverse of the permutation Gram
    const auto perms = permutations_of(q);
    const auto& wg = cached_gram_weingarten(q, n);
    for (size_t i = 0; i < perms.size(); ++i) {
        if (cycle_type_of(perms[i], q) == cycle_type) return wg[i];
    }
    throw ConfigError("weingarten: invalid cycle type");
}

Rational haar_monomial_average(const MonomialSpec& m, long n)
{
    const int q = m.degree;
    if (q < 1 || q > 4) throw ConfigError("haar_monomial_average: degree must be 1..4");
    if (n < 1) throw ConfigError("haar_monomial_average: dimension must be >= 1");

    // multiset matching condition
    auto sorted = [q](std::array<long, 4> a) {
        std::sort(a.begin(), a.begin() + q);
        return a;
    };
    if (sorted(m.u_rows) != sorted(m.uc_rows) || sorted(m.u_cols) != sorted(m.uc_cols))
        return 0;

    const auto perms = permutations_of(q);
    Rational total = 0;
    for (const Perm& sigma : perms) {
        bool rows_ok = true;
        for (int k = 0; k < q; ++k)
            if (m.u_rows[k] != m.uc_rows[sigma[k]]) { rows_ok = false; break; }
        if (!rows_ok) continue;
        for (const Perm& tau : perms) {
            bool cols_ok = true;
            for (int k = 0; k < q; ++k)
                if (m.u_cols[k] != m.uc_cols[tau[k]]) { cols_ok = false; break; }
            if (!cols_ok) continue;
            total += weingarten(q, cycle_type_of(compose(sigma, invert(tau, q), q), q), n);
        }
    }
    return total;
}

RationalVector15 c_factors(long N)
{
    if (N < 1) throw ConfigError("c_factors: N must be >= 1");
    const Rational n = N;
    // The published list except C12, which the brute-force reconstruction
    // fixes to -4N(N-1); with the listed -4(N-1) the contraction would not
    // reproduce the closed-form C^T M^(1).
    return {
        2 * n,          -2 * n,         -2 * (n - 2),  -2 * (n - 2),
        -2 * n,         -2 * n,         -2 * n,        2 * n * (2 * n - 1),
        4 * (n - 1),    4 * (n - 1),    -4 * (n - 1) * (n - 2),
        -4 * n * (n - 1),
        4 * (n - 1),    4 * (n - 1),    4 * (n - 1) * (n - 4),
    };
}

std::pair<RationalVector15, RationalVector15> ctm_vectors(long N)
{
    if (N < 1) throw ConfigError("ctm_vectors: N must be >= 1");
    const Rational n = N;
    const Rational pref = Rational(1) / (n * (2 * n + 1) * (2 * n + 3));
    const Rational d1 = 2 * n - 1;       // 2N-1
    const Rational d3 = 2 * n - 3;       // 2N-3

    RationalVector15 v1{
        n + 4,
        (n - 1) / d1,
        2 * (n - 1) * (n + 2) / d1,
        (n - 1) / d1,
        2 * (n * n + 3 * n + 1) / d1,
        -(n - 1) / (n * d1),
        (n - 1) * (n + 2) * (2 * n + 1) / (n * d1),
        -(n - 1) / (n * d1),
        -(n - 1) / (2 * n * d1),
        -(3 * n + 2) / (2 * n * d1),
        -(n - 1) / (2 * n * d1),
        -(n - 1) / (2 * n * d1),
        (4 * n * n * n + 6 * n * n - 3 * n - 2) / (2 * n * d1),
        -(n - 1) / (2 * n * d1),
        Rational(5) / (2 * d3 * d1),
    };
    RationalVector15 v2{
        n + 4,
        (n - 1) / d1,
        (n - 1) / d1,
        (n - 1) / d1,
        (n - 1) / d1,
        -(n - 1) / (n * d1),
        2 * (n - 1) * (n + 1) / (n * d1),
        (n + 1) * (4 * n + 1) / (n * d1),
        (2 * n * n + 2 * n + 1) / (2 * n * d1),
        (n - 1) * (n + 1) / (n * d1),
        (2 * n * n + 2 * n + 1) / (2 * n * d1),
        (2 * n * n + 2 * n + 1) / (2 * n * d1),
        (n - 1) * (n + 1) / (n * d1),
        (2 * n * n + 2 * n + 1) / (2 * n * d1),
        2 * (n - 1) * (n + 1) / (d3 * d1),
    };
    for (auto& x : v1) x *= pref;
    for (auto& x : v2) x *= pref;
    return {v1, v2};
}

std::pair<RationalVector15, RationalVector15> brute_force_ctm(long N)
{
    return brute_force_ctm(N, BruteForceOptions{});
}

std::pair<RationalVector15, RationalVector15> brute_force_ctm(
    long N, const BruteForceOptions& options)
{
    if (N < 1) throw ConfigError("brute_force_ctm: N must be >= 1");
    if (N > 6) throw ConfigError("brute_force_ctm: cost grows like N^4; use N <= 6");
    const long dim = 2 * N;
    const auto& parts = enumerate_partitions();

    // Group averages per (row pattern, column pattern).  In the echo-trace
    // monomial the conj(U) factors carry rows (r1,r2,r3,r4) in slot order and
    // the U factors the cyclic shift (r4,r1,r2,r3); both share the column
    // slots.  A^(1) and A^(2) have the same arrangement, so one matrix serves
    // both contractions.
    std::array<std::array<Rational, 15>, 15> avg{};
    for (int I = 0; I < 15; ++I) {
        const auto& rp = parts[I].block_of;
        for (int J = 0; J < 15; ++J) {
            const auto& cp = parts[J].block_of;
            MonomialSpec mono;
            mono.degree = 4;
            mono.uc_rows = {rp[0], rp[1], rp[2], rp[3]};
            mono.u_rows = {rp[3], rp[0], rp[1], rp[2]};
            mono.u_cols = {cp[0], cp[1], cp[2], cp[3]};
            mono.uc_cols = {cp[0], cp[1], cp[2], cp[3]};
            avg[I][J] = haar_monomial_average(mono, dim);
        }
    }

    // <eps_j eps_k> for a GUE environment Hamiltonian at element variance
    // 1/N: 1 on the diagonal, -1/N off it (exact at finite N).
    const Rational eps_same = 1;
    const Rational eps_diff = Rational(-1, N);

    RationalVector15 c1{}, c2{};
    for (int a = 0; a < 2; ++a)
     for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
       for (int d = 0; d < 2; ++d) {
        const int sign1 = ((a + d) % 2 == 0) ? 1 : -1;
        const int sign2 = ((a + c) % 2 == 0) ? 1 : -1;
        for (long i = 0; i < N; ++i)
         for (long j = 0; j < N; ++j)
          for (long k = 0; k < N; ++k)
           for (long l = 0; l < N; ++l) {
            const std::array<long, 4> rows{a * N + i, b * N + j, c * N + k, d * N + l};
            const int lab = partition_label(rows) - 1;
            // A^(1): sign (-1)^{a+d}, eigenvalues at slots (k, j)
            if (!options.restrict_rows || i == l) {
                Rational w = (k == j) ? eps_same : eps_diff;
                if (options.use_qubit_signs) w *= sign1;
                c1[lab] += w;
            }
            // A^(2): sign (-1)^{a+c}, eigenvalues at slots (j, l)
            if (!options.restrict_rows || i == k) {
                Rational w = (j == l) ? eps_same : eps_diff;
                if (options.use_qubit_signs) w *= sign2;
                c2[lab] += w;
            }
           }
       }

    RationalVector15 ctm1{}, ctm2{};
    for (int J = 0; J < 15; ++J) {
        for (int I = 0; I < 15; ++I) {
            ctm1[J] += c1[I] * avg[I][J];
            ctm2[J] += c2[I] * avg[I][J];
        }
    }
    return {ctm1, ctm2};
}

}  // namespace rmtq
