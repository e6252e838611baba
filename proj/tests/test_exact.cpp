#include <doctest.h>

#include <limits>
#include <sstream>

#include "tropline/exact.hpp"
#include "tropline/random.hpp"

using tropline::ExactScalar;

TEST_SUITE("exact") {
  TEST_CASE("canonical form") {
    const ExactScalar x(6, -4);
    CHECK(x.str() == "-3/2");
    CHECK(x.numerator() == -3);
    CHECK(x.denominator() == 2);
    CHECK(ExactScalar(0, 5).str() == "0");
    CHECK(ExactScalar(10, 5).is_integer());
    CHECK_THROWS_AS(ExactScalar(1, 0), std::domain_error);
  }

  TEST_CASE("parse accepts integers, fractions and exact decimals") {
    CHECK(ExactScalar::parse("7") == ExactScalar(7));
    CHECK(ExactScalar::parse("-14/4") == ExactScalar(-7, 2));
    CHECK(ExactScalar::parse("0.1") == ExactScalar(1, 10));
    CHECK(ExactScalar::parse("1.5e2") == ExactScalar(150));
    CHECK(ExactScalar::parse("-2.5E-3") == ExactScalar(-1, 400));
    CHECK(ExactScalar::parse(" 3 ") == ExactScalar(3));
    CHECK(ExactScalar::parse("123456789012345678901234567890").str() == "123456789012345678901234567890");
    for (const char* bad : {"", "abc", "1/0", "1/", "/2", "1.2.3", "1e", "--1", "0x10"}) {
      CHECK_THROWS_AS(ExactScalar::parse(bad), std::invalid_argument);
    }
  }

  TEST_CASE("from_double is exact") {
    CHECK(ExactScalar::from_double(0.5) == ExactScalar(1, 2));
    CHECK(ExactScalar::from_double(0.1) != ExactScalar(1, 10));
    CHECK(ExactScalar::from_double(0.1).to_double() == 0.1);
    CHECK(ExactScalar::from_double(-3.0) == ExactScalar(-3));
  }

  TEST_CASE("arithmetic agrees with GMP rationals across the overflow boundary") {
    tropline::SeededStream s(11);
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    std::vector<std::pair<std::int64_t, std::int64_t>> values{{big, 1}, {-big, 1}, {big, big - 1}, {1, big}, {0, 1}, {-1, 3}};
    for (int k = 0; k < 300; ++k) {
      const auto scale = k % 3 == 0 ? (std::int64_t{1} << 62) : 1000;
      const auto num = static_cast<std::int64_t>(s.uniform_below(2 * static_cast<std::uint64_t>(scale))) - scale;
      const auto den = static_cast<std::int64_t>(s.uniform_below(static_cast<std::uint64_t>(scale))) + 1;
      values.emplace_back(num, den);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto& [an, ad] = values[i];
      const auto& [bn, bd] = values[(i * 7 + 3) % values.size()];
      const ExactScalar a(an, ad);
      const ExactScalar b(bn, bd);
      mpq_class qa(an, ad);
      mpq_class qb(bn, bd);
      qa.canonicalize();
      qb.canonicalize();
      CHECK((a + b).to_mpq() == qa + qb);
      CHECK((a - b).to_mpq() == qa - qb);
      CHECK((a * b).to_mpq() == qa * qb);
      if (bn != 0) CHECK((a / b).to_mpq() == qa / qb);
      CHECK((a < b) == (qa < qb));
      CHECK((a == b) == (qa == qb));
    }
  }

  TEST_CASE("large values demote when they fit again") {
    const ExactScalar big(std::numeric_limits<std::int64_t>::max());
    const ExactScalar sq = big * big;
    CHECK_FALSE(sq.is_small());
    const ExactScalar back = sq / big;
    CHECK(back.is_small());
    CHECK(back == big);
    CHECK(ExactScalar(std::numeric_limits<std::int64_t>::min()) + ExactScalar(1) ==
          ExactScalar(std::numeric_limits<std::int64_t>::min() + 1));
  }

  TEST_CASE("division by zero throws") { CHECK_THROWS_AS(ExactScalar(1) / ExactScalar(0), std::domain_error); }

  TEST_CASE("decimal rendering and streaming") {
    CHECK(ExactScalar(1, 3).decimal(5) == "0.33333");
    std::ostringstream os;
    os << ExactScalar(-5, 10);
    CHECK(os.str() == "-1/2");
    CHECK(tropline::max(ExactScalar(1, 2), ExactScalar(1, 3)) == ExactScalar(1, 2));
    CHECK(tropline::min(ExactScalar(1, 2), ExactScalar(1, 3)) == ExactScalar(1, 3));
  }
}
