#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rzlab/error.hpp"
#include "rzlab/rational.hpp"
#include "rzlab/rng.hpp"

using namespace rzlab;

TEST_CASE("doubles convert exactly") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-0.75) == Rational(-3, 4));
  CHECK(rational_from_double(3.0) == Rational(3));
  TrialRng rng(17, 0);
  for (int i = 0; i < 200; ++i) {
    double d = rng.next_gaussian();
    CHECK(to_double_nearest(rational_from_double(d)) == d);
  }
}

TEST_CASE("nearest rounding picks the closer neighbor") {
  // 1/3 is strictly between two doubles; nearest must round-trip stably
  Rational third(1, 3);
  double d = to_double_nearest(third);
  double lo = std::nextafter(d, -HUGE_VAL), hi = std::nextafter(d, HUGE_VAL);
  CHECK(abs(third - rational_from_double(d)) <= abs(third - rational_from_double(lo)));
  CHECK(abs(third - rational_from_double(d)) <= abs(third - rational_from_double(hi)));
}

TEST_CASE("literal parsing") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2024") == Rational(-2024));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("3e-4") == Rational(3, 10000));
  CHECK(parse_rational("2.5e3") == Rational(2500));
  CHECK(parse_rational(" 7/2 ") == Rational(7, 2));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("canonical formatting") {
  CHECK(format_rational(Rational(3, 4)) == "3/4");
  CHECK(format_rational(Rational(-6, 8)) == "-3/4");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(parse_rational(format_rational(Rational(-355, 113))) == Rational(-355, 113));
}
