#pragma once

#include <array>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "tropline/metric.hpp"
#include "tropline/random.hpp"
#include "tropline/tree.hpp"

namespace testing {

inline tropline::UltraVector vec(int n, std::initializer_list<std::int64_t> xs) {
  std::vector<tropline::ExactScalar> e;
  for (auto x : xs) e.emplace_back(x);
  return tropline::UltraVector(n, std::move(e));
}

inline tropline::UltraVector vec_q(int n, std::initializer_list<const char*> xs) {
  std::vector<tropline::ExactScalar> e;
  for (auto x : xs) e.push_back(tropline::ExactScalar::parse(x));
  return tropline::UltraVector(n, std::move(e));
}

// Straight from the definition, with no shared code: every triple's maximum
// appears at least twice.
inline bool brute_three_point(const tropline::UltraVector& u) {
  const int n = u.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        const auto& a = u.at(i, j);
        const auto& b = u.at(i, k);
        const auto& c = u.at(j, k);
        const auto m = tropline::max(a, tropline::max(b, c));
        if ((a == m) + (b == m) + (c == m) < 2) return false;
      }
    }
  }
  return true;
}

inline tropline::EquidistantTree random_generic_tree(int n, tropline::SeededStream& s) {
  return tropline::assign_generic_heights(tropline::sample_topology_uniform(n, s), s,
                                          tropline::default_height_range(n));
}

// Random ultrametric with many ties: integer heights from a tiny range,
// assigned top-down so parents stay strictly higher.
inline tropline::UltraVector random_tied_ultrametric(int n, tropline::SeededStream& s) {
  const auto t = tropline::sample_topology_uniform(n, s);
  const auto clades = t.clades();
  std::vector<tropline::ExactScalar> h(clades.size());
  for (std::size_t x = 0; x < clades.size(); ++x) {
    // Height = clade size plus a coin flip keeps parent > child and creates
    // plenty of equal heights among incomparable clades.
    h[x] = tropline::ExactScalar(2 * tropline::leaf_count_of(clades[x]) + static_cast<int>(s.uniform_below(2)));
  }
  return tropline::tree_to_ultrametric(tropline::tree_from_topology(t, h));
}

}  // namespace testing
