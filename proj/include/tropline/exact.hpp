#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace tropline {

namespace detail {
struct SmallRational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};
}  // namespace detail

/// Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
///
/// Values whose reduced numerator and denominator fit in a signed 64-bit word
/// are stored inline and handled with 128-bit intermediates; anything larger
/// is promoted to a GMP rational and demoted again as soon as it fits. The two
/// representations are indistinguishable through the public interface.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(std::int64_t value);  // NOLINT(google-explicit-constructor)
  ExactScalar(std::int64_t num, std::int64_t den);
  explicit ExactScalar(const mpq_class& q);
  explicit ExactScalar(const mpz_class& z);

  /// Accepts `p`, `p/q`, and decimal notation with optional exponent
  /// (`-1.25`, `3e-2`). Decimal text is converted exactly, not via double.
  static ExactScalar parse(std::string_view text);

  /// Exact value of a finite double (its full binary expansion).
  static ExactScalar from_double(double value);

  [[nodiscard]] mpz_class numerator() const;
  [[nodiscard]] mpz_class denominator() const;
  [[nodiscard]] mpq_class to_mpq() const;
  [[nodiscard]] bool is_integer() const;
  [[nodiscard]] bool is_small() const { return std::holds_alternative<Small>(rep_); }
  [[nodiscard]] int sign() const;
  [[nodiscard]] double to_double() const;

  /// `p` for integers, `p/q` otherwise.
  [[nodiscard]] std::string str() const;
  /// Rounded decimal rendering with the given number of significant digits.
  [[nodiscard]] std::string decimal(int significant_digits = 12) const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& rhs);
  ExactScalar& operator-=(const ExactScalar& rhs);
  ExactScalar& operator*=(const ExactScalar& rhs);
  ExactScalar& operator/=(const ExactScalar& rhs);

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);

  friend bool operator==(const ExactScalar& a, const ExactScalar& b);
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b);

 private:
  using Small = detail::SmallRational;

  static ExactScalar from_wide(__int128 num, __int128 den);
  static ExactScalar from_big(mpq_class q);

  std::variant<Small, mpq_class> rep_;
};

ExactScalar max(const ExactScalar& a, const ExactScalar& b);
ExactScalar min(const ExactScalar& a, const ExactScalar& b);

std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

}  // namespace tropline
