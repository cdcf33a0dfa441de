#include <doctest.h>

#include <limits>
#include <sstream>
#include <stdexcept>

#include "atc/rational.hpp"

using atc::Rational;

TEST_CASE("rational values are normalized") {
  CHECK(Rational(6, 8) == Rational(3, 4));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(3, -6).den() == 2);
  CHECK(Rational(0, 5) == Rational(0));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic and ordering") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(3, 4) == Rational(-1, 4));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(7, 7) == Rational(1));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational overflow is reported") {
  const auto big = std::numeric_limits<std::int64_t>::max();
  CHECK_THROWS_AS(Rational(big) * Rational(3), std::overflow_error);
  CHECK_NOTHROW(Rational(big, 3) * Rational(3));
}

TEST_CASE("rational decimal rendering rounds half away from zero") {
  CHECK(Rational(29, 5).to_decimal() == "5.800000");
  CHECK(Rational(25, 4).to_decimal() == "6.250000");
  CHECK(Rational(2, 3).to_decimal() == "0.666667");
  CHECK(Rational(-2, 3).to_decimal() == "-0.666667");
  CHECK(Rational(1, 8).to_decimal(2) == "0.13");
  CHECK(Rational(5).to_decimal(0) == "5");
}

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK(Rational::parse("0.03") == Rational(3, 100));
  CHECK(Rational::parse("1/5") == Rational(1, 5));
  CHECK(Rational::parse("0.2") == Rational(1, 5));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
}

TEST_CASE("rational stream output") {
  std::ostringstream a, b;
  a << Rational(10, 4);
  b << Rational(4);
  CHECK(a.str() == "5/2");
  CHECK(b.str() == "4");
}
