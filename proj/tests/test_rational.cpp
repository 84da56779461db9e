#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bmx/rational.hpp"
#include "testutil.hpp"

using bmx::Rat;

TEST_CASE("arithmetic and normalization") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK((Rat(1, 3) - Rat(1, 2)) == Rat(-1, 6));
  CHECK((Rat(3, 4) * Rat(2, 9)) == Rat(1, 6));
  CHECK((Rat(3, 4) / Rat(9, 2)) == Rat(1, 6));
  CHECK(-Rat(1, 2) == Rat(-1, 2));
  CHECK(Rat(7).str() == "7");
  CHECK(Rat(-3, 9).str() == "-1/3");
}

TEST_CASE("ordering is exact") {
  CHECK(Rat(1, 3) < Rat(34, 100));
  CHECK(Rat(1, 3) > Rat(33, 100));
  CHECK(Rat(0) <= Rat(0));
  CHECK(!(Rat(5, 7) < Rat(5, 7)));
}

TEST_CASE("parse forms") {
  CHECK(Rat::parse("3/4") == Rat(3, 4));
  CHECK(Rat::parse("-3/4") == Rat(-3, 4));
  CHECK(Rat::parse("12") == Rat(12));
  CHECK(Rat::parse("1.25") == Rat(5, 4));
  CHECK(Rat::parse("-0.5") == Rat(-1, 2));
  CHECK(Rat::parse(" 7/2 ") == Rat(7, 2));
  CHECK_THROWS_AS(Rat::parse("1/0"), bmx::Error);
  CHECK_THROWS_AS(Rat::parse("abc"), bmx::Error);
  CHECK_THROWS_AS(Rat::parse(""), bmx::Error);
  CHECK_THROWS_AS(Rat::parse("1.2.3"), bmx::Error);
}

TEST_CASE("division by zero and overflow") {
  CHECK_THROWS_AS(Rat(1) / Rat(0), bmx::Error);
  Rat big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * big, bmx::Error);
}

TEST_CASE("field axioms on random values") {
  bmxtest::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Rat a = rng.rational(40, 20), b = rng.rational(40, 20), c = rng.rational(40, 20);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!c.is_zero()) CHECK((a / c) * c == a);
  }
}

TEST_CASE("round trip through strings") {
  bmxtest::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Rat a = rng.rational(1000, 999);
    CHECK(Rat::parse(a.str()) == a);
  }
}
