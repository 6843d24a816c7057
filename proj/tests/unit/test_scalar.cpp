#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "core/error.hpp"
#include "core/scalar.hpp"

using namespace hypalg;

TEST_CASE("parse_rational reads integers, decimals, exponents and fractions exactly") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("1.5e-3") == Rational(3, 2000));
  CHECK(parse_rational("2E2") == 200);
  CHECK(parse_rational("6/8") == Rational(3, 4));
  CHECK(parse_rational("-1/3") == Rational(-1, 3));
  CHECK(parse_rational("0.1") != rational_from_double(0.1));
}

TEST_CASE("parse_rational rejects malformed text") {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "3/", "e5", "1e", "--1"}) {
    CAPTURE(std::string(bad));
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
}

TEST_CASE("text forms") {
  CHECK(to_text(parse_rational("6/4")) == "3/2");
  CHECK(to_text(Rational(5)) == "5");
  CHECK(format_g17(0.1) == "0.10000000000000001");
  CHECK(to_text(0.1) == "0.1");
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
}

TEST_CASE("rational to double rounds to nearest") {
  CHECK(to_double(parse_rational("0.9")) == 0.9);
  CHECK(to_double(parse_rational("-0.9")) == -0.9);
  CHECK(to_double(parse_rational("0.1")) == 0.1);
  CHECK(to_double(parse_rational("1/3")) == 1.0 / 3.0);
  CHECK(to_double(parse_rational("2/3")) == 2.0 / 3.0);
  CHECK(to_double(parse_rational("1e-320")) == 1e-320);
  CHECK(to_double(parse_rational("1.7976931348623157e308")) == 1.7976931348623157e308);
  CHECK(to_double(Rational(0)) == 0.0);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> digits(1, 999999999);
  std::uniform_int_distribution<int> exps(-30, 30);
  for (int i = 0; i < 2000; ++i) {
    const std::string text = std::to_string(digits(rng)) + "e" + std::to_string(exps(rng));
    CAPTURE(text);
    REQUIRE(to_double(parse_rational(text)) == std::strtod(text.c_str(), nullptr));
  }
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(static_cast<double>(digits(rng)), exps(rng));
    REQUIRE(to_double(rational_from_double(v)) == v);
  }
}
