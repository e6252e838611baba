#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "support.hpp"
#include "tropline/ensembles.hpp"
#include "tropline/random.hpp"

using namespace tropline;

TEST_SUITE("random") {
  TEST_CASE("streams are reproducible and substreams differ") {
    SeededStream a(1);
    SeededStream b(1);
    for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());
    CHECK(a.position() == 100);
    const SeededStream root(9);
    SeededStream x = root.substream(0);
    SeededStream y = root.substream(1);
    SeededStream x2 = root.substream(0);
    const auto vx = x.next_u64();
    CHECK(vx != y.next_u64());
    CHECK(vx == x2.next_u64());
  }

  TEST_CASE("bounded integers stay in range and hit every value") {
    SeededStream s(2);
    for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 7ULL, 1000ULL}) {
      std::set<std::uint64_t> seen;
      for (int k = 0; k < 5000; ++k) {
        const auto x = s.uniform_below(bound);
        REQUIRE(x < bound);
        seen.insert(x);
      }
      if (bound <= 7) CHECK(seen.size() == bound);
    }
    CHECK_THROWS(s.uniform_below(0));
    for (int k = 0; k < 1000; ++k) {
      const double u = s.uniform01();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
  }

  TEST_CASE("labelled topology enumeration") {
    CHECK(enumerate_labeled_topologies(2).size() == 1);
    for (int n = 3; n <= 7; ++n) {
      auto all = enumerate_labeled_topologies(n);
      CHECK(all.size() == labeled_topology_count(n));
      std::sort(all.begin(), all.end());
      CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
      for (const auto& t : all) CHECK(t.is_binary());
    }
    CHECK(labeled_topology_count(3) == 3);
    CHECK(labeled_topology_count(4) == 15);
    CHECK(labeled_topology_count(5) == 105);
    CHECK_THROWS(enumerate_labeled_topologies(8));
  }

  TEST_CASE("three-leaf sampler hits each topology about a third of the time") {
    SeededStream s(3);
    std::map<Topology, int> counts;
    for (int k = 0; k < 30000; ++k) ++counts[sample_topology_uniform(3, s)];
    CHECK(counts.size() == 3);
    for (const auto& [t, c] : counts) CHECK(std::abs(c - 10000) < 400);
  }

  TEST_CASE("sampler uniformity for six leaves") {
    SeededStream s(4);
    const auto r = sampler_uniformity(6, 100000, s);
    CHECK(r.dof == 944);
    CHECK(r.p_value > 1e-3);
  }

  TEST_CASE("generic heights") {
    SeededStream s(5);
    const Topology cherry(3, {0b011, 0b111});
    const auto t = assign_generic_heights(cherry, s, 10);
    CHECK(t.height(t.root()) > t.height(t.lca(1, 2)));
    CHECK(t.height(t.lca(1, 2)) >= 1);
    CHECK(t.height(t.root()) <= 10);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 + trial % 30;
      const auto tree = assign_generic_heights(sample_topology_uniform(n, s), s, n - 1 + trial % 3);
      CHECK(is_generic(tree));
      std::set<ExactScalar> heights;
      for (VertexId x : tree.internal_vertices()) {
        heights.insert(tree.height(x));
        CHECK(tree.height(x).is_integer());
      }
      CHECK(heights.size() == static_cast<std::size_t>(n - 1));
    }
    CHECK_THROWS_AS(assign_generic_heights(cherry, s, 1), std::invalid_argument);
    CHECK_THROWS_AS(assign_generic_heights(Topology(3, {0b111}), s, 10), std::invalid_argument);
  }

  TEST_CASE("generic pairs are reproducible and always generic") {
    SeededStream a(6);
    SeededStream b(6);
    for (int k = 0; k < 50; ++k) {
      const auto p = sample_generic_pair(3 + k % 20, a);
      const auto q = sample_generic_pair(3 + k % 20, b);
      CHECK(p.first == q.first);
      CHECK(p.second == q.second);
      CHECK(is_generic_pair(p.first, p.second));
    }
  }

  TEST_CASE("first height draw is generic at least 99% of the time with the default range") {
    for (int n : {4, 8, 16, 32, 64}) {
      SeededStream s(7);
      int first = 0;
      int draws = 0;
      for (int k = 0; k < 1000; ++k) {
        const auto p = sample_generic_pair(n, s);
        first += p.draws == 1;
        draws += p.draws;
      }
      CAPTURE(n);
      CHECK(first >= 990);
      CHECK(draws < 1100);
    }
  }

  TEST_CASE("tiny height ranges exhaust the redraw limit") {
    SeededStream s(8);
    // With heights {1, 2, 3} both trees get the same multiset, so the
    // difference 0 repeats and no draw is ever generic.
    CHECK_THROWS_AS(sample_generic_pair(4, s, 3), std::runtime_error);
  }
}
