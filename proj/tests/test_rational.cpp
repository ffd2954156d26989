#include <catch2/catch_amalgamated.hpp>

#include "qk/errors.hpp"
#include "qk/rational.hpp"

using qk::Rational;

TEST_CASE("construction normalizes") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 7).num == 0);
  CHECK(Rational(0, 7).den == 1);
  CHECK(Rational(5).den == 1);
  CHECK(Rational(42, 7) == Rational(6));
  CHECK_THROWS_AS(Rational(1, 0), qk::Error);
}

TEST_CASE("default is zero") {
  Rational r;
  CHECK(r == Rational(0));
}

TEST_CASE("formatting") {
  CHECK(Rational(5).str() == "5");
  CHECK(Rational(4, 3).str() == "4/3");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(0).str() == "0");
}

TEST_CASE("parsing") {
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("4/3") == Rational(4, 3));
  CHECK(Rational::parse("-3/9") == Rational(-1, 3));
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK_THROWS_AS(Rational::parse(""), qk::Error);
  CHECK_THROWS_AS(Rational::parse("x"), qk::Error);
  CHECK_THROWS_AS(Rational::parse("4/"), qk::Error);
  CHECK_THROWS_AS(Rational::parse("/3"), qk::Error);
  CHECK_THROWS_AS(Rational::parse("4/3x"), qk::Error);
  CHECK_THROWS_AS(Rational::parse("1/0"), qk::Error);
}

TEST_CASE("ordering crosses representations") {
  CHECK(Rational(1, 2) < Rational(2, 3));
  CHECK(Rational(4, 3) > Rational(1));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(2, 4) >= Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  // Cross-multiplication must not overflow on large components.
  CHECK(Rational(1000000000, 999999999) > Rational(1000000001, 1000000001));
}

TEST_CASE("bound ratio maps t to t/(t+1)") {
  CHECK(Rational(1).bound_ratio() == Rational(1, 2));
  CHECK(Rational(4, 3).bound_ratio() == Rational(4, 7));
  CHECK(Rational(5, 3).bound_ratio() == Rational(5, 8));
  CHECK(Rational(13, 12).bound_ratio() == Rational(13, 25));
  CHECK(Rational(10, 3).bound_ratio() == Rational(10, 13));
}

TEST_CASE("threshold comparison against integer targets") {
  const Rational t(4, 3);
  CHECK(t.times_count_at_least(3, 4));       // 4 >= 4
  CHECK_FALSE(t.times_count_at_least(3, 5)); // 4 < 5
  CHECK(Rational(1).times_count_at_least(2, 2));
  CHECK_FALSE(Rational(1).times_count_at_least(1, 2));
  // Wide values stay exact.
  CHECK(Rational(1000000000).times_count_at_least(1000000000, 100000000000000000LL));
  CHECK_FALSE(
      Rational(1000000000).times_count_at_least(1000000000, 1000000000000000001LL));
}

TEST_CASE("arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) + Rational(1, 2) == Rational(1));
}
