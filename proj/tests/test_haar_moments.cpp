// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>

#include "rmtq/ensembles.hpp"
#include "rmtq/errors.hpp"
#include "rmtq/haar_moments.hpp"

using namespace rmtq;

TEST_SUITE_BEGIN("haar_moments");

TEST_CASE("the fifteen partitions in published order")
{
    const auto& parts = enumerate_partitions();
    CHECK(parts.size() == 15);  // Bell(4)
    CHECK(parts[0].num_blocks == 1);
    CHECK(parts[14].num_blocks == 4);
    CHECK(partition_label({7, 7, 7, 7}) == 1);
    CHECK(partition_label({1, 1, 1, 9}) == 2);
    CHECK(partition_label({3, 1, 3, 1}) == 7);
    CHECK(partition_label({5, 2, 2, 8}) == 12);
    CHECK(partition_label({1, 2, 3, 4}) == 15);
    CHECK(to_double(partition_multiplicity(parts[0], 6)) == 6.0);
    CHECK(to_double(partition_multiplicity(parts[14], 6)) == 6.0 * 5 * 4 * 3);
}

namespace {

// test-local permutation helpers for the orthogonality identity
std::vector<std::vector<int>> all_perms(int q)
{
    std::vector<int> idx(q);
    for (int i = 0; i < q; ++i) idx[i] = i;
    std::vector<std::vector<int>> out;
    do {
        out.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

std::vector<int> cycle_type_sorted(const std::vector<int>& p)
{
    std::vector<bool> seen(p.size(), false);
    std::vector<int> type;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = p[j];
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.begin(), type.end(), std::greater<int>());
    return type;
}

}  // namespace

TEST_CASE("weingarten table satisfies the gram orthogonality identity")
{
    // sum_tau Wg(sigma tau^{-1}) n^{#cycles(tau)} = [sigma == id], which pins
    // the table as the exact inverse of the permutation gram matrix
    for (int q = 1; q <= 4; ++q) {
        for (long n : {static_cast<long>(q), 5L, 9L}) {
            const auto perms = all_perms(q);
            for (const auto& sigma : perms) {
                Rational acc = 0;
                for (const auto& tau : perms) {
                    std::vector<int> tau_inv(q), prod(q);
                    for (int i = 0; i < q; ++i) tau_inv[tau[i]] = i;
                    for (int i = 0; i < q; ++i) prod[i] = sigma[tau_inv[i]];
                    Rational pw = 1;
                    for (int c = cycle_type_sorted(tau).size(); c-- > 0;) pw *= n;
                    acc += weingarten(q, cycle_type_sorted(prod), n) * pw;
                }
                bool is_identity = true;
                for (int i = 0; i < q; ++i) is_identity = is_identity && sigma[i] == i;
                CHECK(acc == Rational(is_identity ? 1 : 0));
            }
        }
    }
    // explicit spot values
    CHECK(weingarten(1, {1}, 7) == Rational(1, 7));
    CHECK(weingarten(2, {1, 1}, 5) == Rational(1, 24));
    CHECK(weingarten(2, {2}, 5) == Rational(-1, 120));
    CHECK(weingarten(3, {1, 1, 1}, 4) == Rational(14, 4 * 15 * 12));
    CHECK(weingarten(4, {4}, 6) ==
          Rational(-5) / (Rational(6) * (36 * 36 * 36 - 14 * 36 * 36 + 49 * 36 - 36)));
}

TEST_CASE("haar monomial averages: first and second moments")
{
    for (long n : {2L, 3L, 7L}) {
        MonomialSpec first;
        first.degree = 1;
        first.u_rows = {0};
        first.u_cols = {0};
        first.uc_rows = {0};
        first.uc_cols = {0};
        CHECK(haar_monomial_average(first, n) == Rational(1, n));

        MonomialSpec second;  // |U11|^4
        second.degree = 2;
        second.u_rows = {0, 0};
        second.u_cols = {0, 0};
        second.uc_rows = {0, 0};
        second.uc_cols = {0, 0};
        CHECK(haar_monomial_average(second, n) == Rational(2, n * (n + 1)));

        MonomialSpec cross;  // U11 U22 conj(U12) conj(U21)
        cross.degree = 2;
        cross.u_rows = {0, 1};
        cross.u_cols = {0, 1};
        cross.uc_rows = {0, 1};
        cross.uc_cols = {1, 0};
        CHECK(haar_monomial_average(cross, n) == Rational(-1, n * (n * n - 1)));

        MonomialSpec mismatch;  // row multisets disagree -> exactly zero
        mismatch.degree = 2;
        mismatch.u_rows = {0, 0};
        mismatch.u_cols = {0, 1};
        mismatch.uc_rows = {0, 1};
        mismatch.uc_cols = {0, 1};
        CHECK(haar_monomial_average(mismatch, n) == 0);
    }
}

TEST_CASE("monomial averages are invariant under index relabeling")
{
    MonomialSpec m;
    m.degree = 3;
    m.u_rows = {0, 1, 1};
    m.u_cols = {2, 0, 1};
    m.uc_rows = {1, 0, 1};
    m.uc_cols = {0, 2, 1};
    const Rational base = haar_monomial_average(m, 5);
    // any injective relabeling of row values and of column values
    auto relabel = [](long v) { return 10 + 3 * v; };
    MonomialSpec r = m;
    for (int k = 0; k < 3; ++k) {
        r.u_rows[k] = relabel(m.u_rows[k]);
        r.uc_rows[k] = relabel(m.uc_rows[k]);
        r.u_cols[k] = 7 * m.u_cols[k] + 1;
        r.uc_cols[k] = 7 * m.uc_cols[k] + 1;
    }
    CHECK(haar_monomial_average(r, 5) == base);
    CHECK(base != 0);
}

TEST_CASE("monomial average via Monte Carlo at n = 3 (degree 4, gram branch)")
{
    // <U11 U12 conj(U11) conj(U12)> has degree 2; pick a genuine degree-4
    // monomial so the n < q pseudo-inverse path is exercised:
    // <|U11|^2 |U12|^2 |U21|^2 |U22|^2>
    MonomialSpec m;
    m.degree = 4;
    m.u_rows = {0, 0, 1, 1};
    m.u_cols = {0, 1, 0, 1};
    m.uc_rows = {0, 0, 1, 1};
    m.uc_cols = {0, 1, 0, 1};
    const double exact = to_double(haar_monomial_average(m, 3));

    const int draws = 200000;
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < draws; ++i) {
        const auto u = sample_haar_unitary(3, derive_stream(59, i));
        const double v = std::norm(u(0, 0)) * std::norm(u(0, 1)) *
                         std::norm(u(1, 0)) * std::norm(u(1, 1));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum_sq - sum * sum / draws) / (draws - 1.0) / draws);
    CHECK(std::abs(mean - exact) < 3.0 * se);
    CHECK(exact > 0.0);
}

TEST_CASE("c factors match the published values")
{
    CHECK(c_factors(3)[0] == 6);           // C1 = 2N
    CHECK(c_factors(2)[7] == 12);          // C8 = 2N(2N-1)
    CHECK(c_factors(4)[14] == 0);          // C15 = 4(N-1)(N-4)
    CHECK(c_factors(5)[10] == -4 * 4 * 3); // C11 = -4(N-1)(N-2)
}

TEST_CASE("contracted vector first entries")
{
    // (N+4)/(N(2N+1)(2N+3)) at N = 1 is 5/15 = 1/3, for both vectors
    const auto [v1, v2] = ctm_vectors(1);
    CHECK(v1[0] == Rational(1, 3));
    CHECK(v2[0] == Rational(1, 3));
    for (long n = 2; n <= 6; ++n) {
        const auto [a, b] = ctm_vectors(n);
        CHECK(a[0] == b[0]);
    }
}

TEST_CASE("closed forms equal the brute-force reconstruction")
{
    for (long n : {2L, 3L}) {
        const auto [c1, c2] = ctm_vectors(n);
        const auto [b1, b2] = brute_force_ctm(n);
        for (int i = 0; i < 15; ++i) {
            CHECK(c1[i] == b1[i]);
            CHECK(c2[i] == b2[i]);
        }
    }
    CHECK_THROWS_AS(brute_force_ctm(7), ConfigError);
}

TEST_CASE("qubit signs matter and the row restriction is exact")
{
    const auto base = brute_force_ctm(2);
    BruteForceOptions no_signs;
    no_signs.use_qubit_signs = false;
    const auto unsigned_version = brute_force_ctm(2, no_signs);
    bool any_diff = false;
    for (int i = 0; i < 15; ++i) {
        any_diff = any_diff || (base.first[i] != unsigned_version.first[i]);
    }
    CHECK(any_diff);

    BruteForceOptions restricted;
    restricted.restrict_rows = true;
    const auto r = brute_force_ctm(3, restricted);
    const auto full = brute_force_ctm(3);
    for (int i = 0; i < 15; ++i) {
        CHECK(r.first[i] == full.first[i]);
        CHECK(r.second[i] == full.second[i]);
    }
}

TEST_SUITE_END();

TEST_SUITE_BEGIN("properties");

TEST_CASE("large-N orders of the contracted products")
{
    // Orders in N of [C^T M]_nu and of the component multiplicities; the
    // leading products are nu = 13 of the first arrangement and nu = 15 of
    // the second, one full power of N above everything else.
    const long n1 = 1 << 11, n2 = 1 << 12;
    const auto [a1, a2] = ctm_vectors(n1);
    const auto [b1, b2] = ctm_vectors(n2);
    const std::array<int, 15> f_order{1, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 3, 4};
    std::array<int, 15> total1{}, total2{};
    for (int i = 0; i < 15; ++i) {
        const double o1 = std::log2(std::abs(to_double(b1[i]) / to_double(a1[i])));
        const double o2 = std::log2(std::abs(to_double(b2[i]) / to_double(a2[i])));
        total1[i] = static_cast<int>(std::lround(o1)) + f_order[i];
        total2[i] = static_cast<int>(std::lround(o2)) + f_order[i];
    }
    CHECK(total1[12] == 1);  // nu = 13 of A^(1)
    CHECK(total2[14] == 1);  // nu = 15 of A^(2)
    for (int i = 0; i < 15; ++i) {
        if (i != 12) CHECK(total1[i] <= 0);
        if (i != 14) CHECK(total2[i] <= 0);
    }
    // [C^T M^(1)]_13 itself scales as N^-2 while its multiplicity is N^3
    const double o13 = std::log2(std::abs(to_double(b1[12]) / to_double(a1[12])));
    CHECK(std::lround(o13) == -2);
    CHECK(f_order[12] == 3);
}

TEST_SUITE_END();
