#include "tropline/exact.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tropline {

namespace {

using u128 = unsigned __int128;

u128 abs128(__int128 x) { return x < 0 ? u128(0) - u128(x) : u128(x); }

u128 gcd128(u128 a, u128 b) {
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits_small_num(__int128 x) { return x > -__int128(INT64_MAX) - 1 && x <= INT64_MAX; }

mpz_class mpz_from_u128(u128 x) {
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(x)));
  return (hi << 64) + lo;
}

mpz_class mpz_from_i128(__int128 x) {
  mpz_class m = mpz_from_u128(abs128(x));
  return x < 0 ? mpz_class(-m) : m;
}

bool fits_small(const mpz_class& z) { return z.fits_slong_p() && z.get_si() != LONG_MIN; }

}  // namespace

ExactScalar::ExactScalar(std::int64_t value) {
  if (value == INT64_MIN) {
    rep_ = mpq_class(mpz_class(static_cast<long>(value)));
  } else {
    rep_ = Small{value, 1};
  }
}

ExactScalar::ExactScalar(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("ExactScalar: zero denominator");
  *this = from_wide(num, den);
}

ExactScalar::ExactScalar(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  *this = from_big(std::move(c));
}

ExactScalar::ExactScalar(const mpz_class& z) { *this = from_big(mpq_class(z)); }

ExactScalar ExactScalar::from_wide(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const u128 g = gcd128(abs128(num), u128(den));
  if (g > 1) {
    num /= static_cast<__int128>(g);
    den /= static_cast<__int128>(g);
  }
  ExactScalar r;
  if (fits_small_num(num) && den <= INT64_MAX) {
    r.rep_ = Small{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
  } else {
    mpq_class q(mpz_from_i128(num), mpz_from_i128(den));
    r.rep_ = std::move(q);
  }
  return r;
}

ExactScalar ExactScalar::from_big(mpq_class q) {
  ExactScalar r;
  if (fits_small(q.get_num()) && fits_small(q.get_den())) {
    r.rep_ = Small{q.get_num().get_si(), q.get_den().get_si()};
  } else {
    r.rep_ = std::move(q);
  }
  return r;
}

ExactScalar ExactScalar::parse(std::string_view text) {
  auto fail = [&]() -> ExactScalar {
    throw std::invalid_argument("invalid number '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!is_digits(num) || !is_digits(den)) return fail();
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    if (negative) n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return from_big(std::move(q));
  }

  std::string_view s = text;
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!is_digits(exp_text) || exp_text.size() > 5) return fail();
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  long fraction_digits = 0;
  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (!whole.empty() && !is_digits(whole)) return fail();
    if (!frac.empty() && !is_digits(frac)) return fail();
    if (whole.empty() && frac.empty()) return fail();
    digits = std::string(whole) + std::string(frac);
    fraction_digits = static_cast<long>(frac.size());
  } else {
    if (!is_digits(s)) return fail();
    digits = std::string(s);
  }
  mpz_class mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  const long scale = fraction_digits - exponent;
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  mpq_class q = scale >= 0 ? mpq_class(mantissa, power) : mpq_class(mantissa * power);
  q.canonicalize();
  return from_big(std::move(q));
}

ExactScalar ExactScalar::from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  mpq_class q(value);
  q.canonicalize();
  return from_big(std::move(q));
}

mpz_class ExactScalar::numerator() const {
  if (const auto* s = std::get_if<Small>(&rep_)) return mpz_class(static_cast<long>(s->num));
  return std::get<mpq_class>(rep_).get_num();
}

mpz_class ExactScalar::denominator() const {
  if (const auto* s = std::get_if<Small>(&rep_)) return mpz_class(static_cast<long>(s->den));
  return std::get<mpq_class>(rep_).get_den();
}

mpq_class ExactScalar::to_mpq() const {
  if (const auto* s = std::get_if<Small>(&rep_)) {
    return mpq_class(mpz_class(static_cast<long>(s->num)), mpz_class(static_cast<long>(s->den)));
  }
  return std::get<mpq_class>(rep_);
}

bool ExactScalar::is_integer() const {
  if (const auto* s = std::get_if<Small>(&rep_)) return s->den == 1;
  return std::get<mpq_class>(rep_).get_den() == 1;
}

int ExactScalar::sign() const {
  if (const auto* s = std::get_if<Small>(&rep_)) return (s->num > 0) - (s->num < 0);
  return sgn(std::get<mpq_class>(rep_));
}

double ExactScalar::to_double() const {
  if (const auto* s = std::get_if<Small>(&rep_)) {
    if (s->den == 1) return static_cast<double>(s->num);
  }
  return to_mpq().get_d();
}

std::string ExactScalar::str() const {
  if (const auto* s = std::get_if<Small>(&rep_)) {
    if (s->den == 1) return std::to_string(s->num);
    return std::to_string(s->num) + "/" + std::to_string(s->den);
  }
  return std::get<mpq_class>(rep_).get_str();
}

std::string ExactScalar::decimal(int significant_digits) const {
  if (const auto* s = std::get_if<Small>(&rep_); s != nullptr && s->den == 1) {
    return std::to_string(s->num);
  }
  std::ostringstream os;
  os << std::setprecision(significant_digits) << to_double();
  return os.str();
}

ExactScalar ExactScalar::operator-() const {
  if (const auto* s = std::get_if<Small>(&rep_)) {
    ExactScalar r;
    r.rep_ = Small{-s->num, s->den};
    return r;
  }
  return from_big(mpq_class(-std::get<mpq_class>(rep_)));
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  using Small = ExactScalar::Small;
  const auto* x = std::get_if<Small>(&a.rep_);
  const auto* y = std::get_if<Small>(&b.rep_);
  if (x != nullptr && y != nullptr) {
    if (x->den == y->den) {
      std::int64_t sum = 0;
      if (!__builtin_add_overflow(x->num, y->num, &sum) && sum != INT64_MIN) {
        if (x->den == 1) {
          ExactScalar r;
          r.rep_ = Small{sum, 1};
          return r;
        }
        return ExactScalar::from_wide(sum, x->den);
      }
      return ExactScalar::from_wide(static_cast<__int128>(x->num) + y->num, x->den);
    }
    return ExactScalar::from_wide(
        static_cast<__int128>(x->num) * y->den + static_cast<__int128>(y->num) * x->den,
        static_cast<__int128>(x->den) * y->den);
  }
  return ExactScalar::from_big(mpq_class(a.to_mpq() + b.to_mpq()));
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  using Small = ExactScalar::Small;
  const auto* x = std::get_if<Small>(&a.rep_);
  const auto* y = std::get_if<Small>(&b.rep_);
  if (x != nullptr && y != nullptr) {
    return ExactScalar::from_wide(static_cast<__int128>(x->num) * y->num,
                                  static_cast<__int128>(x->den) * y->den);
  }
  return ExactScalar::from_big(mpq_class(a.to_mpq() * b.to_mpq()));
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
  if (b.sign() == 0) throw std::domain_error("ExactScalar: division by zero");
  using Small = ExactScalar::Small;
  const auto* x = std::get_if<Small>(&a.rep_);
  const auto* y = std::get_if<Small>(&b.rep_);
  if (x != nullptr && y != nullptr) {
    return ExactScalar::from_wide(static_cast<__int128>(x->num) * y->den,
                                  static_cast<__int128>(x->den) * y->num);
  }
  return ExactScalar::from_big(mpq_class(a.to_mpq() / b.to_mpq()));
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& rhs) { return *this = *this + rhs; }
ExactScalar& ExactScalar::operator-=(const ExactScalar& rhs) { return *this = *this - rhs; }
ExactScalar& ExactScalar::operator*=(const ExactScalar& rhs) { return *this = *this * rhs; }
ExactScalar& ExactScalar::operator/=(const ExactScalar& rhs) { return *this = *this / rhs; }

bool operator==(const ExactScalar& a, const ExactScalar& b) {
  using Small = ExactScalar::Small;
  const auto* x = std::get_if<Small>(&a.rep_);
  const auto* y = std::get_if<Small>(&b.rep_);
  if (x != nullptr && y != nullptr) return x->num == y->num && x->den == y->den;
  // Canonical forms: a small value never equals a big one.
  if (x != nullptr || y != nullptr) return false;
  return std::get<mpq_class>(a.rep_) == std::get<mpq_class>(b.rep_);
}

std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
  using Small = ExactScalar::Small;
  const auto* x = std::get_if<Small>(&a.rep_);
  const auto* y = std::get_if<Small>(&b.rep_);
  if (x != nullptr && y != nullptr) {
    if (x->den == y->den) return x->num <=> y->num;
    const __int128 lhs = static_cast<__int128>(x->num) * y->den;
    const __int128 rhs = static_cast<__int128>(y->num) * x->den;
    return lhs <=> rhs;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

ExactScalar max(const ExactScalar& a, const ExactScalar& b) { return a < b ? b : a; }
ExactScalar min(const ExactScalar& a, const ExactScalar& b) { return b < a ? b : a; }

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }

}  // namespace tropline
