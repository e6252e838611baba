#include "tropline/kernels.hpp"

#include <omp.h>

#include <cstdlib>
#include <limits>
#include <string>

namespace tropline {

namespace {

// Max of three values is attained at least twice.
bool max_twice(const ExactScalar& a, const ExactScalar& b, const ExactScalar& c) {
  if (a == b) return !(a < c);
  if (a == c) return !(a < b);
  if (b == c) return !(b < a);
  return false;
}

}  // namespace

int configured_threads() {
  if (const char* env = std::getenv("TROPLINE_THREADS"); env != nullptr && *env != '\0') {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) return cap;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

void apply_thread_cap() { omp_set_num_threads(configured_threads()); }

std::optional<std::array<int, 3>> three_point_violation_serial(const UltraVector& u) {
  const int n = u.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const ExactScalar& uij = u[pair_position(i, j, n)];
      for (int k = j + 1; k <= n; ++k) {
        if (!max_twice(uij, u[pair_position(i, k, n)], u[pair_position(j, k, n)])) {
          return std::array<int, 3>{i, j, k};
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::array<int, 3>> three_point_violation_parallel(const UltraVector& u) {
  const int n = u.n();
  // Encode the first violation per outer index as a lexicographic rank.
  long best = std::numeric_limits<long>::max();
#pragma omp parallel for schedule(dynamic) reduction(min : best)
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const ExactScalar& uij = u[pair_position(i, j, n)];
      bool found = false;
      for (int k = j + 1; k <= n; ++k) {
        if (!max_twice(uij, u[pair_position(i, k, n)], u[pair_position(j, k, n)])) {
          const long rank = (static_cast<long>(i) * (n + 1) + j) * (n + 1) + k;
          if (rank < best) best = rank;
          found = true;
          break;
        }
      }
      if (found) break;
    }
  }
  if (best == std::numeric_limits<long>::max()) return std::nullopt;
  const int k = static_cast<int>(best % (n + 1));
  const int j = static_cast<int>((best / (n + 1)) % (n + 1));
  const int i = static_cast<int>(best / (static_cast<long>(n + 1) * (n + 1)));
  return std::array<int, 3>{i, j, k};
}

}  // namespace tropline
