#include "tropline/metric.hpp"

#include <algorithm>
#include <string>

#include "tropline/errors.hpp"
#include "tropline/kernels.hpp"

namespace tropline {

namespace {

void require_same_dimension(const UltraVector& u, const UltraVector& v) {
  if (u.n() != v.n() || u.size() != v.size()) {
    throw DimensionMismatch("dimension mismatch: n=" + std::to_string(u.n()) +
                            " vs n=" + std::to_string(v.n()));
  }
}

// Below this many leaves the OpenMP region costs more than the scan.
constexpr int kParallelThreePointThreshold = 48;

}  // namespace

PairIndex PairIndex::of(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  if (i == j || i < 1 || j > n) {
    throw std::out_of_range("invalid leaf pair (" + std::to_string(i) + "," + std::to_string(j) +
                            ") for n=" + std::to_string(n));
  }
  return {i, j, pair_position(i, j, n)};
}

PairIndex PairIndex::at(std::size_t k, int n) {
  if (k >= pair_count(n)) throw std::out_of_range("pair position out of range");
  int i = 1;
  std::size_t row = static_cast<std::size_t>(n - 1);
  while (k >= row) {
    k -= row;
    ++i;
    --row;
  }
  const int j = i + 1 + static_cast<int>(k);
  return {i, j, pair_position(i, j, n)};
}

UltraVector::UltraVector(int n, std::vector<ExactScalar> entries) : n_(n), entries_(std::move(entries)) {
  if (n < 2) throw std::invalid_argument("UltraVector needs at least 2 leaves, got " + std::to_string(n));
  if (entries_.size() != pair_count(n)) {
    throw DimensionMismatch("UltraVector for n=" + std::to_string(n) + " needs " +
                            std::to_string(pair_count(n)) + " entries, got " +
                            std::to_string(entries_.size()));
  }
}

UltraVector UltraVector::constant(int n, const ExactScalar& value) {
  return UltraVector(n, std::vector<ExactScalar>(pair_count(n), value));
}

const ExactScalar& UltraVector::at(int i, int j) const { return entries_[PairIndex::of(i, j, n_).k]; }

const ExactScalar& UltraVector::min_entry() const {
  return *std::min_element(entries_.begin(), entries_.end());
}

const ExactScalar& UltraVector::max_entry() const {
  return *std::max_element(entries_.begin(), entries_.end());
}

UltraVector trop_add(const UltraVector& u, const UltraVector& v) {
  require_same_dimension(u, v);
  std::vector<ExactScalar> out;
  out.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) out.push_back(max(u[k], v[k]));
  return UltraVector(u.n(), std::move(out));
}

UltraVector trop_scale(const ExactScalar& lambda, const UltraVector& v) {
  std::vector<ExactScalar> out;
  out.reserve(v.size());
  for (const auto& x : v.entries()) out.push_back(lambda + x);
  return UltraVector(v.n(), std::move(out));
}

UltraVector trop_combine(const UltraVector& u, const ExactScalar& lambda, const UltraVector& v) {
  require_same_dimension(u, v);
  std::vector<ExactScalar> out;
  out.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    ExactScalar shifted = lambda + v[k];
    out.push_back(shifted < u[k] ? u[k] : std::move(shifted));
  }
  return UltraVector(u.n(), std::move(out));
}

std::optional<std::array<int, 3>> find_three_point_violation(const UltraVector& u) {
  if (u.n() >= kParallelThreePointThreshold) return three_point_violation_parallel(u);
  return three_point_violation_serial(u);
}

bool three_point_check(const UltraVector& u) { return !find_three_point_violation(u).has_value(); }

std::optional<std::array<int, 4>> find_four_point_violation(const UltraVector& u) {
  const int n = u.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (int k = j + 1; k <= n; ++k) {
        for (int l = k + 1; l <= n; ++l) {
          const ExactScalar a = u[pair_position(i, j, n)] + u[pair_position(k, l, n)];
          const ExactScalar b = u[pair_position(i, k, n)] + u[pair_position(j, l, n)];
          const ExactScalar c = u[pair_position(i, l, n)] + u[pair_position(j, k, n)];
          const ExactScalar top = max(a, max(b, c));
          const int hits = (a == top) + (b == top) + (c == top);
          if (hits < 2) return std::array<int, 4>{i, j, k, l};
        }
      }
    }
  }
  return std::nullopt;
}

bool four_point_check(const UltraVector& u) { return !find_four_point_violation(u).has_value(); }

ProjectivePoint normalize_projective(const UltraVector& u) {
  const ExactScalar shift = u.min_entry();
  if (shift.sign() == 0) return ProjectivePoint(u);
  std::vector<ExactScalar> out;
  out.reserve(u.size());
  for (const auto& x : u.entries()) out.push_back(x - shift);
  return ProjectivePoint(UltraVector(u.n(), std::move(out)));
}

bool projective_equal(const UltraVector& u, const UltraVector& v) {
  require_same_dimension(u, v);
  if (u.size() == 0) return true;
  const ExactScalar offset = u[0] - v[0];
  for (std::size_t k = 1; k < u.size(); ++k) {
    if (u[k] - v[k] != offset) return false;
  }
  return true;
}

}  // namespace tropline
