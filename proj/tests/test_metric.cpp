#include <doctest.h>

#include "support.hpp"
#include "tropline/errors.hpp"
#include "tropline/kernels.hpp"
#include "tropline/metric.hpp"

using namespace tropline;
using testing::vec;

TEST_SUITE("metric") {
  TEST_CASE("pair index is a lexicographic bijection") {
    for (int n = 2; n <= 12; ++n) {
      std::size_t k = 0;
      for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j, ++k) {
          CHECK(pair_position(i, j, n) == k);
          CHECK(PairIndex::of(j, i, n).k == k);
          const PairIndex p = PairIndex::at(k, n);
          CHECK(p.i == i);
          CHECK(p.j == j);
        }
      }
      CHECK(k == pair_count(n));
    }
    CHECK_THROWS(PairIndex::of(2, 2, 4));
    CHECK_THROWS(PairIndex::of(1, 5, 4));
    CHECK_THROWS(PairIndex::at(6, 4));
  }

  TEST_CASE("vector length must match the leaf count") {
    CHECK_THROWS_AS(vec(3, {1, 2}), DimensionMismatch);
    CHECK_THROWS_AS(vec(1, {}), std::invalid_argument);
    CHECK_NOTHROW(vec(2, {5}));
  }

  TEST_CASE("tropical sum and scaling on the three-leaf example") {
    const auto u = vec(3, {3, 3, 1});
    const auto v = vec(3, {3, 2, 3});
    CHECK(trop_add(u, v) == vec(3, {3, 3, 3}));
    CHECK(trop_add(u, u) == u);
    CHECK(trop_add(u, vec(3, {1, 0, 1})) == u);
    CHECK(trop_scale(1, v) == vec(3, {4, 3, 4}));
    CHECK(trop_scale(0, v) == v);
    CHECK(trop_scale(-2, v) == vec(3, {1, 0, 1}));
    CHECK(trop_combine(u, -2, v) == u);
    CHECK(trop_combine(u, 1, v) == vec(3, {4, 3, 4}));
    CHECK_THROWS_AS(trop_add(u, vec(4, {1, 1, 1, 1, 1, 1})), DimensionMismatch);
  }

  TEST_CASE("semiring laws on random vectors") {
    SeededStream s(3);
    auto rnd = [&s](int n) {
      std::vector<ExactScalar> e;
      for (std::size_t k = 0; k < pair_count(n); ++k) {
        e.emplace_back(static_cast<std::int64_t>(s.uniform_below(41)) - 20, static_cast<std::int64_t>(1 + s.uniform_below(4)));
      }
      return UltraVector(n, std::move(e));
    };
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 3 + trial % 5;
      const auto a = rnd(n);
      const auto b = rnd(n);
      const auto c = rnd(n);
      const ExactScalar lambda(static_cast<std::int64_t>(s.uniform_below(9)) - 4, 3);
      CHECK(trop_add(a, b) == trop_add(b, a));
      CHECK(trop_add(trop_add(a, b), c) == trop_add(a, trop_add(b, c)));
      CHECK(trop_add(a, a) == a);
      CHECK(trop_scale(lambda, trop_add(a, b)) == trop_add(trop_scale(lambda, a), trop_scale(lambda, b)));
      CHECK(trop_combine(a, lambda, b) == trop_add(a, trop_scale(lambda, b)));
      CHECK(three_point_check(a) == testing::brute_three_point(a));
      CHECK(three_point_check(a) == three_point_check(trop_scale(lambda, a)));
      const auto p = normalize_projective(a);
      CHECK(normalize_projective(p.rep()) == p);
      CHECK(projective_equal(a, p.rep()));
      CHECK(p.rep().min_entry() == 0);
    }
  }

  TEST_CASE("three-point condition") {
    CHECK(three_point_check(vec(3, {3, 3, 1})));
    CHECK(three_point_check(vec(3, {5, 5, 5})));
    CHECK_FALSE(three_point_check(vec(3, {1, 2, 3})));
    const auto bad = find_three_point_violation(vec(3, {1, 2, 3}));
    REQUIRE(bad);
    CHECK(*bad == std::array<int, 3>{1, 2, 3});
    CHECK(three_point_check(vec(2, {7})));
  }

  TEST_CASE("four-point condition") {
    CHECK_FALSE(four_point_check(vec(4, {0, 0, 0, 0, 0, 1})));
    CHECK(four_point_check(vec(4, {3, 3, 3, 2, 2, 1})));
    const auto bad = find_four_point_violation(vec(4, {0, 0, 0, 0, 0, 1}));
    REQUIRE(bad);
    CHECK(*bad == std::array<int, 4>{1, 2, 3, 4});
    SeededStream s(5);
    for (int trial = 0; trial < 200; ++trial) {
      const auto u = testing::random_tied_ultrametric(4 + trial % 6, s);
      REQUIRE(three_point_check(u));
      CHECK(four_point_check(u));
    }
  }

  TEST_CASE("projective normalization") {
    CHECK(normalize_projective(vec(3, {3, 3, 3})).rep() == vec(3, {0, 0, 0}));
    CHECK(normalize_projective(vec(3, {0, 0, 0})).rep() == vec(3, {0, 0, 0}));
    CHECK(normalize_projective(vec(3, {4, 3, 4})).rep() == vec(3, {1, 0, 1}));
    CHECK(projective_equal(vec(3, {3, 3, 3}), vec(3, {0, 0, 0})));
    CHECK_FALSE(projective_equal(vec(3, {3, 3, 1}), vec(3, {3, 2, 3})));
    CHECK_THROWS_AS(projective_equal(vec(3, {3, 3, 1}), vec(2, {1})), DimensionMismatch);
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("serial and parallel three-point kernels agree") {
    SeededStream s(17);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 3 + static_cast<int>(s.uniform_below(60));
      UltraVector u = testing::random_tied_ultrametric(n, s);
      if (trial % 2 == 1) {
        // Break one entry so that a violation exists somewhere.
        std::vector<ExactScalar> e(u.entries().begin(), u.entries().end());
        e[s.uniform_below(e.size())] += ExactScalar(1, 7);
        u = UltraVector(n, std::move(e));
      }
      const auto serial = three_point_violation_serial(u);
      CHECK(serial == three_point_violation_parallel(u));
      CHECK(serial.has_value() != testing::brute_three_point(u));
      CHECK(find_three_point_violation(u) == serial);
    }
  }
}
