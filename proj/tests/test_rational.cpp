#include <doctest.h>

#include "gen.hpp"
#include "orbicheck/errors.hpp"
#include "orbicheck/rational.hpp"

using orbicheck::InputError;
using orbicheck::Rat;

TEST_CASE("parse and print canonical form") {
  CHECK(Rat::parse("13/3").str() == "13/3");
  CHECK(Rat::parse("-26/6").str() == "-13/3");
  CHECK(Rat::parse("48/7") == Rat(48, 7));
  CHECK(Rat::parse("10/5").str() == "2");
  CHECK(Rat(3, -9).str() == "-1/3");
  CHECK(Rat::parse("0").is_zero());
}

TEST_CASE("malformed rationals are rejected") {
  for (const char* bad : {"", "1.5", "1/0", " 2", "2 ", "1/", "/3", "a", "1e3", "--1"})
    CHECK_THROWS_AS(Rat::parse(bad), InputError);
  CHECK_THROWS_AS(Rat(1, 0), InputError);
}

TEST_CASE("integer conversion") {
  CHECK(Rat(12, 4).to_int() == 3);
  CHECK_THROWS_AS(Rat(1, 2).to_int(), InputError);
  CHECK(Rat(-7, 3).reciprocal() == Rat(-3, 7));
  CHECK_THROWS(Rat(0).reciprocal());
}

TEST_CASE("displayed fractions combine exactly") {
  CHECK(Rat(3) * Rat(13, 9) == Rat(13, 3));
  CHECK(Rat(3) * Rat(48, 7) == Rat(144, 7));
  CHECK(Rat(16) * Rat(9, 16) == Rat(9));
  CHECK(Rat(25) * Rat(3, 5) == Rat(15));
  CHECK(Rat(-1) + Rat(1, 2) + Rat(1, 3) + Rat(1, 10) == Rat(-1, 15));
}

TEST_CASE("property: field axioms on random rationals") {
  gen::Gen g(11);
  for (int i = 0; i < 500; ++i) {
    Rat a = g.rat(), b = g.rat(), c = g.rat();
    CHECK(a + b == b + a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) - b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(Rat::parse(a.str()) == a);
    CHECK(((a < b) || (b < a) || (a == b)));
  }
}
