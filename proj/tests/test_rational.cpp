#include <catch2/catch_amalgamated.hpp>

#include "lot/rational.hpp"

using lot::parse_rational;
using lot::Rational;
using lot::to_fraction_string;

TEST_CASE("decimal strings parse to exact fractions") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(parse_rational("2") == Rational(2));
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("-2/6") == Rational(-1, 3));
  CHECK(parse_rational("1.5e2") == Rational(150));
  CHECK(parse_rational("25e-2") == Rational(1, 4));
}

TEST_CASE("malformed rational literals are rejected") {
  CHECK_THROWS_AS(parse_rational(""), lot::InputError);
  CHECK_THROWS_AS(parse_rational("abc"), lot::InputError);
  CHECK_THROWS_AS(parse_rational("1/0"), lot::InputError);
  CHECK_THROWS_AS(parse_rational("1.2.3"), lot::InputError);
  CHECK_THROWS_AS(parse_rational("1/"), lot::InputError);
  CHECK_THROWS_AS(parse_rational("2e"), lot::InputError);
}

TEST_CASE("fraction strings round-trip") {
  for (const char* text : {"1/3", "-7/2", "0", "41", "1023/1024"}) {
    const Rational r = parse_rational(text);
    CHECK(parse_rational(to_fraction_string(r)) == r);
  }
  CHECK(to_fraction_string(Rational(4, 2)) == "2");
}

TEST_CASE("doubles convert exactly") {
  const double x = 0.1;
  const Rational r = lot::rational_from_double(x);
  CHECK(lot::to_double(r) == x);
  CHECK(r != Rational(1, 10));  // 0.1 is not representable in binary
  CHECK(lot::rational_from_double(0.5) == Rational(1, 2));
}

TEST_CASE("format_double uses 12 significant digits") {
  CHECK(lot::format_double(2.0) == "2");
  CHECK(lot::format_double(10.009775171065) == "10.0097751711");
}
