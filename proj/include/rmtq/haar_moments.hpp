// Copyright (c) 2026 The rmtq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <vector>

namespace rmtq {

// Exact arithmetic throughout this module; floating conversion happens only
// at the linear-response boundary.
using Rational = boost::multiprecision::cpp_rational;
using RationalVector15 = std::array<Rational, 15>;

// One of the 15 set partitions of four index slots.  Labels follow the
// coincidence-pattern enumeration used throughout: 1 = all equal,
// 2..5 = one triple, 6..8 = two pairs, 9..14 = one pair, 15 = all distinct.
struct Partition {
    int label = 1;                       // 1..15
    std::array<int, 4> block_of{};       // slot -> block id, first-occurrence order
    int num_blocks = 1;
};

const std::vector<Partition>& enumerate_partitions();

// Classify four values (equality pattern only) into a partition label.
int partition_label(const std::array<long, 4>& values);

// Number of assignments of distinct block values out of n: falling factorial
// n (n-1) ... (n-k+1) with k = number of blocks.
Rational partition_multiplicity(const Partition& p, long n);

// Relabel the slots of a partition by the permutation slot_map
// (slot_map[s] = destination slot of old slot s) and return the new label.
int relabel_partition(int label, const std::array<int, 4>& slot_map);

// Monomial in matrix entries of a Haar unitary:
//   prod_k U[u_rows[k], u_cols[k]] * prod_k conj(U)[uc_rows[k], uc_cols[k]]
// with degree factors of each kind.  Index values are arbitrary labels; only
// their coincidence pattern matters.
struct MonomialSpec {
    int degree = 1;  // q <= 4
    std::array<long, 4> u_rows{}, u_cols{};
    std::array<long, 4> uc_rows{}, uc_cols{};
};

// Weingarten function of U(n) for permutations of S_q, q <= 4, keyed by
// cycle type (sorted descending).  For n >= q this is the closed rational
// table; for n < q the Gram matrix of permutations is pseudo-inverted in
// exact arithmetic (the average formula remains valid in that regime).
Rational weingarten(int q, const std::vector<int>& cycle_type, long n);

// Exact Haar average of a degree-q monomial over U(n) via the permutation
// sum  sum_{sigma,tau} [rows match via sigma][cols match via tau]
// Wg(sigma tau^{-1}, n).  Zero whenever the row or column multisets of the
// U and conj(U) factors disagree.
Rational haar_monomial_average(const MonomialSpec& m, long n);

// The 15 row-pattern weights of the echo-operator expansion: the qubit sign
// and environment-eigenvalue covariance summed over all index assignments in
// each coincidence class.  Entry conventions follow the A^(1) term; see
// brute_force_ctm for the A^(2) counterpart.
RationalVector15 c_factors(long N);

// Closed forms of the two contracted vectors C^T M^(1,2) entering the
// second-order echo response, common prefactor 1/(N (2N+1) (2N+3)).
std::pair<RationalVector15, RationalVector15> ctm_vectors(long N);

// Independent reconstruction of C^T M^(1,2) from first principles: classify
// all qubit/environment index tuples, weight them by the qubit signs and the
// exact eigenvalue covariances <eps_j eps_k>, and contract against Haar
// monomial averages of the eigenvector matrix.  Cost grows like N^4; guarded
// at N <= 6.
struct BruteForceOptions {
    bool use_qubit_signs = true;   // drop to probe the sign structure
    bool restrict_rows = false;    // apply the i=l (resp. i=k) reduction
};
std::pair<RationalVector15, RationalVector15> brute_force_ctm(long N);
std::pair<RationalVector15, RationalVector15> brute_force_ctm(
    long N, const BruteForceOptions& options);

double to_double(const Rational& r);

}  // namespace rmtq
