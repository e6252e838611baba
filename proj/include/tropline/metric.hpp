#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "tropline/exact.hpp"

namespace tropline {

/// Number of unordered leaf pairs on n leaves.
constexpr std::size_t pair_count(int n) {
  return n < 2 ? 0 : static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

/// Leaf pair {i, j} (1-based, i < j) and its position k in the lexicographic
/// order (1,2), (1,3), ..., (n-1,n).
struct PairIndex {
  int i = 0;
  int j = 0;
  std::size_t k = 0;

  /// Accepts the two labels in either order; throws on i == j or out of range.
  static PairIndex of(int i, int j, int n);
  static PairIndex at(std::size_t k, int n);
};

/// Linear position of the pair {i, j}, i < j, without range checks.
constexpr std::size_t pair_position(int i, int j, int n) {
  const auto ii = static_cast<std::size_t>(i - 1);
  const auto nn = static_cast<std::size_t>(n);
  return ii * (2 * nn - ii - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

/// A point of R^(n choose 2), indexed by leaf pairs in lexicographic order.
class UltraVector {
 public:
  UltraVector() = default;
  UltraVector(int n, std::vector<ExactScalar> entries);
  static UltraVector constant(int n, const ExactScalar& value);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] std::span<const ExactScalar> entries() const { return entries_; }
  [[nodiscard]] const ExactScalar& operator[](std::size_t k) const { return entries_[k]; }
  /// Entry for the leaf pair {i, j}; labels may be given in either order.
  [[nodiscard]] const ExactScalar& at(int i, int j) const;
  [[nodiscard]] const ExactScalar& min_entry() const;
  [[nodiscard]] const ExactScalar& max_entry() const;

  friend bool operator==(const UltraVector&, const UltraVector&) = default;

 private:
  int n_ = 0;
  std::vector<ExactScalar> entries_;
};

/// Element of R^(n choose 2) / R·1, held by its representative with minimum
/// entry zero.
class ProjectivePoint {
 public:
  [[nodiscard]] const UltraVector& rep() const { return rep_; }
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;

 private:
  friend ProjectivePoint normalize_projective(const UltraVector& u);
  explicit ProjectivePoint(UltraVector rep) : rep_(std::move(rep)) {}
  UltraVector rep_;
};

/// Entrywise max (tropical sum).
UltraVector trop_add(const UltraVector& u, const UltraVector& v);
/// Adds lambda to every entry (tropical scalar product).
UltraVector trop_scale(const ExactScalar& lambda, const UltraVector& v);
/// u ⊕ (lambda ⊙ v) without materializing the scaled vector.
UltraVector trop_combine(const UltraVector& u, const ExactScalar& lambda, const UltraVector& v);

/// True iff every triple's maximum is attained at least twice.
bool three_point_check(const UltraVector& u);
/// First triple (i < j < k, lexicographic) whose maximum is unique.
std::optional<std::array<int, 3>> find_three_point_violation(const UltraVector& u);

/// True iff for every 4-subset the largest of the three pair sums is attained
/// at least twice. Vacuously true for n < 4.
bool four_point_check(const UltraVector& u);
std::optional<std::array<int, 4>> find_four_point_violation(const UltraVector& u);

ProjectivePoint normalize_projective(const UltraVector& u);
/// True iff u - v is a constant vector.
bool projective_equal(const UltraVector& u, const UltraVector& v);

}  // namespace tropline
