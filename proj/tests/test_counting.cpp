#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tropline/counting.hpp"
#include "tropline/random.hpp"

using namespace tropline;

namespace {

// Exhaustive count over all disjoint (A2, B2) with A1 = {1..a1} and
// B1 = {a1+1..a1+b1}; subsets as bitmasks.
ExactScalar brute_Q(int a1, int b1, int a2, int b2, int n) {
  const unsigned A1 = (1u << a1) - 1;
  const unsigned B1 = ((1u << b1) - 1) << a1;
  long good = 0;
  long total = 0;
  for (unsigned A2 = 0; A2 < (1u << n); ++A2) {
    if (__builtin_popcount(A2) != a2) continue;
    for (unsigned B2 = 0; B2 < (1u << n); ++B2) {
      if (__builtin_popcount(B2) != b2 || (A2 & B2) != 0) continue;
      ++total;
      good += (A1 & A2) != 0 && (B1 & B2) != 0;
    }
  }
  return ExactScalar(good, total);
}

// Min-form sum by direct double loop over both (a, b) grids.
ExactScalar naive_Sn_bound(int n) {
  ExactScalar total = 0;
  for (int a1 = 1; a1 < n; ++a1) {
    for (int b1 = 1; a1 + b1 <= n; ++b1) {
      const ExactScalar p1 = prob_P(a1, b1, n);
      for (int a2 = 1; a2 < n; ++a2) {
        for (int b2 = 1; a2 + b2 <= n; ++b2) total += qtilde(a1, b1, a2, b2, n) * p1 * prob_P(a2, b2, n);
      }
    }
  }
  return total;
}

}  // namespace

TEST_SUITE("counting") {
  TEST_CASE("planar counts") {
    CHECK(count_planar(1) == 1);
    CHECK(count_planar(3) == 2);
    CHECK(count_planar(5) == 14);
    CHECK(count_planar_marked(2) == 1);
    CHECK(count_planar_marked(3) == 4);
    CHECK(count_planar_marked(5) == 56);
    CHECK(count_planar_marked_ab(2, 1, 1) == 1);
    CHECK(count_planar_marked_ab(4, 1, 1) == 6);
    CHECK_THROWS(count_planar_marked_ab(4, 2, 3));
    CHECK_THROWS(count_planar_marked_ab(4, 0, 1));
  }

  TEST_CASE("formulas agree with enumeration") {
    CHECK(enumerate_planar_trees(1).size() == 1);
    for (int n = 1; n <= 10; ++n) {
      const auto c = planar_census(n);
      CHECK(count_planar(n) == c.trees);
      CHECK(count_planar_marked(n) == c.marked);
      mpz_class sum = 0;
      for (int a = 1; a < n; ++a) {
        for (int b = 1; a + b <= n; ++b) {
          CHECK(count_planar_marked_ab(n, a, b) == c.by_ab[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
          sum += count_planar_marked_ab(n, a, b);
        }
      }
      CHECK(sum == count_planar_marked(n));
    }
  }

  TEST_CASE("P is a distribution and sits under its closed-form bound") {
    CHECK(prob_P(1, 1, 2) == 1);
    for (int n = 2; n <= 64; ++n) {
      ExactScalar total = 0;
      for (int a = 1; a < n; ++a) {
        for (int b = 1; a + b <= n; ++b) {
          const ExactScalar p = prob_P(a, b, n);
          total += p;
          CHECK(p.to_double() <= prob_P_bound(a, b, n));
        }
      }
      CHECK(total == 1);
    }
  }

  TEST_CASE("Q bounds") {
    CHECK(qtilde(1, 1, 1, 1, 4) == ExactScalar(1, 4));
    CHECK(qtilde(2, 3, 1, 4, 9) == qtilde(1, 4, 2, 3, 9));
    CHECK(qtilde0(2, 3, 7) * qtilde0(4, 1, 7) == doctest::Approx(qtilde_geometric(2, 3, 4, 1, 7)));
    CHECK(exact_Q(1, 1, 1, 1, 2) == ExactScalar(1, 2));
    CHECK_THROWS_AS(exact_Q(2, 2, 1, 1, 3), std::invalid_argument);
  }

  TEST_CASE("exact Q matches exhaustive enumeration") {
    for (int n = 2; n <= 7; ++n) {
      for (int a1 = 1; a1 < n; ++a1) {
        for (int b1 = 1; a1 + b1 <= n; ++b1) {
          for (int a2 = 1; a2 < n; ++a2) {
            for (int b2 = 1; a2 + b2 <= n; ++b2) {
              CAPTURE(n);
              CHECK(exact_Q(a1, b1, a2, b2, n) == brute_Q(a1, b1, a2, b2, n));
            }
          }
        }
      }
    }
  }

  TEST_CASE("forced A intersection reduces Q to the B condition") {
    // a_i = n - b_i with a1 + a2 > n: A1 and A2 must meet.
    const int n = 9;
    for (int b1 = 1; b1 < 4; ++b1) {
      for (int b2 = 1; b2 < 4; ++b2) {
        const ExactScalar b_meets = ExactScalar(1) - ExactScalar(mpq_class(binomial(n - b1, b2), binomial(n, b2)));
        CHECK(exact_Q(n - b1, b1, n - b2, b2, n) == b_meets);
      }
    }
  }

  TEST_CASE("exact Q agrees with sampling") {
    SeededStream s(13);
    for (int tuple = 0; tuple < 5; ++tuple) {
      const int n = 6 + static_cast<int>(s.uniform_below(20));
      const int a1 = 1 + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n - 1)));
      const int b1 = 1 + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n - a1)));
      const int a2 = 1 + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n - 1)));
      const int b2 = 1 + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n - a2)));
      const int draws = 100000;
      int hits = 0;
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (int d = 0; d < draws; ++d) {
        for (int k = 0; k < n; ++k) perm[static_cast<std::size_t>(k)] = k;
        // Partial Fisher-Yates: first a2 entries form A2, next b2 form B2.
        for (int k = 0; k < a2 + b2; ++k) {
          const auto j = k + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n - k)));
          std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(j)]);
        }
        bool a_meet = false;
        bool b_meet = false;
        for (int k = 0; k < a2; ++k) a_meet = a_meet || perm[static_cast<std::size_t>(k)] < a1;
        for (int k = a2; k < a2 + b2; ++k) {
          const int x = perm[static_cast<std::size_t>(k)];
          b_meet = b_meet || (x >= a1 && x < a1 + b1);
        }
        hits += a_meet && b_meet;
      }
      const double q = exact_Q(a1, b1, a2, b2, n).to_double();
      const double sigma = std::sqrt(q * (1 - q) / draws);
      CAPTURE(n);
      CHECK(std::abs(hits / static_cast<double>(draws) - q) <= 3 * sigma + 1e-12);
    }
  }

  TEST_CASE("exact Q never exceeds the min form or the geometric form") {
    SeededStream s(17);
    for (int k = 0; k < 10000; ++k) {
      const int n = 2 + static_cast<int>(s.uniform_below(29));
      const int a1 = 1 + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n - 1)));
      const int b1 = 1 + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n - a1)));
      const int a2 = 1 + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n - 1)));
      const int b2 = 1 + static_cast<int>(s.uniform_below(static_cast<std::uint64_t>(n - a2)));
      const ExactScalar q = exact_Q(a1, b1, a2, b2, n);
      const ExactScalar m = qtilde(a1, b1, a2, b2, n);
      CHECK(q <= m);
      CHECK(m.to_double() <= qtilde_geometric(a1, b1, a2, b2, n) * (1 + 1e-12));
      CHECK(q == exact_Q(a2, b2, a1, b1, n));
    }
  }

  TEST_CASE("min-form sum matches a direct double loop") {
    for (int n = 2; n <= 14; ++n) CHECK(sum_Sn_bound(n) == naive_Sn_bound(n));
  }

  TEST_CASE("floating and exact sums agree") {
    for (int n : {2, 3, 8, 33, 100, 257, 512}) {
      const double exact = sum_Sn_bound(n).to_double();
      CHECK(sum_Sn_bound_float(n) == doctest::Approx(exact).epsilon(1e-10));
    }
  }

  TEST_CASE("exact sum sits under both majorants") {
    for (int n : {2, 3, 4, 5, 8, 12, 16, 20, 24}) {
      const ExactScalar exact = sum_Sn_exact(n);
      const ExactScalar bound = sum_Sn_bound(n);
      CAPTURE(n);
      CHECK(exact > 0);
      CHECK(exact <= bound);
      CHECK(bound.to_double() <= sum_Sn_geometric(n) * (1 + 1e-12));
    }
  }

  TEST_CASE("bound is finite and positive over the whole range") {
    for (int n = 3; n <= 4096; n *= 2) {
      const double s = n <= kMaxExactSnBound ? sum_Sn_bound(n).to_double() : sum_Sn_bound_float(n);
      CHECK(std::isfinite(s));
      CHECK(s > 0);
    }
  }
}
