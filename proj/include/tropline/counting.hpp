#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tropline/exact.hpp"

namespace tropline {

mpz_class binomial(unsigned long n, unsigned long k);

/// Rooted binary planar trees with n unlabeled leaves: C(2n-2, n-1) / n.
mpz_class count_planar(int n);
/// Planar trees with one marked internal vertex: (n-1)/n · C(2n-2, n-1).
mpz_class count_planar_marked(int n);
/// Marked planar trees whose marked vertex has a leaves on the left and b on
/// the right: C(2a-2, a-1) C(2b-2, b-1) C(2c, c) / (ab) with c = n - a - b.
/// Requires a, b >= 1 and a + b <= n.
mpz_class count_planar_marked_ab(int n, int a, int b);

/// A planar tree as its internal vertices, each given by the (left, right)
/// leaf counts below it, in post-order.
using PlanarTree = std::vector<std::pair<int, int>>;

/// Every rooted binary planar tree with n leaves, 1 <= n <= 12.
std::vector<PlanarTree> enumerate_planar_trees(int n);

/// Counts tallied from enumerate_planar_trees.
struct PlanarCensus {
  int n = 0;
  std::uint64_t trees = 0;
  std::uint64_t marked = 0;
  /// by_ab[a][b]: marked trees with (left, right) = (a, b).
  std::vector<std::vector<std::uint64_t>> by_ab;
};

PlanarCensus planar_census(int n);

/// Probability that a uniform marked planar tree on n leaves has (left,
/// right) = (a, b) at the marked vertex.
ExactScalar prob_P(int a, int b, int n);
/// Closed-form upper bound
/// sqrt(n) / (2 pi · a sqrt(a - 3/4) · b sqrt(b - 3/4) · sqrt(c + 1/4)).
double prob_P_bound(int a, int b, int n);

/// min(a1 a2, b1 b2) / n.
ExactScalar qtilde(int a1, int b1, int a2, int b2, int n);
/// sqrt(a1 a2 b1 b2) / n.
double qtilde_geometric(int a1, int b1, int a2, int b2, int n);
/// sqrt(ab / n), so that qtilde_geometric = qtilde0(a1, b1) · qtilde0(a2, b2).
double qtilde0(int a, int b, int n);

/// P(A1 ∩ A2 ≠ ∅ and B1 ∩ B2 ≠ ∅) for disjoint pairs (A1, B1) fixed and
/// (A2, B2) uniform among disjoint subsets of 1..n with |A2| = a2, |B2| = b2.
/// Throws std::invalid_argument unless 1 <= a_i, b_i and a_i + b_i <= n.
ExactScalar exact_Q(int a1, int b1, int a2, int b2, int n);

/// Largest n for which sum_Sn_bound is evaluated in exact arithmetic.
inline constexpr int kMaxExactSnBound = 512;

/// Σ qtilde(a1, b1, a2, b2, n) P(a1, b1; n) P(a2, b2; n), exactly.
/// O(n^2 log n); requires 2 <= n <= kMaxExactSnBound.
ExactScalar sum_Sn_bound(int n);
/// Same sum and algorithm in floating point (log-gamma probabilities), for
/// 2 <= n <= 8192.
double sum_Sn_bound_float(int n);
/// (Σ qtilde0(a, b, n) P(a, b; n))^2, the factored geometric-mean majorant.
double sum_Sn_geometric(int n);
/// Σ exact_Q · P · P over all tuples; O(n^4), requires 2 <= n <= 40.
ExactScalar sum_Sn_exact(int n);

}  // namespace tropline
