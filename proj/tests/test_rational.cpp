#include <doctest.h>

#include "circa/errors.hpp"
#include "circa/rational.hpp"

using namespace circa;

TEST_CASE("rat canonicalizes signs and common factors") {
    CHECK(rat(3, 6) == rat(1, 2));
    CHECK(to_string(rat(3, 6)) == "1/2");
    CHECK(to_string(rat(-4, -8)) == "1/2");
    CHECK(to_string(rat(5, -10)) == "-1/2");
    CHECK(to_string(rat(-7, 3)) == "-7/3");
    CHECK(to_string(rat(42)) == "42");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(denominator(rat(5, -10)) == 1 * 2);
    CHECK(numerator(rat(5, -10)) == -1);
    CHECK_THROWS_AS(rat(1, 0), PreconditionError);
}

TEST_CASE("parse_rational accepts p/q and bare integers") {
    CHECK(parse_rational("7/21") == rat(1, 3));
    CHECK(parse_rational("-6/4") == rat(-3, 2));
    CHECK(parse_rational("6/-4") == rat(-3, 2));
    CHECK(parse_rational("0") == Rational(0));
    CHECK(parse_rational("123456789012345678901234567890") ==
          Rational(Int("123456789012345678901234567890")));
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
    CHECK_THROWS_AS(parse_rational("/2"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
}

TEST_CASE("arithmetic keeps results canonical") {
    const Rational a = rat(1, 6);
    const Rational b = rat(1, 3);
    const Rational sum = a + b;  // 1/2
    CHECK(numerator(sum) == 1);
    CHECK(denominator(sum) == 2);
    const Rational prod = rat(2, 3) * rat(3, 4);  // 1/2
    CHECK(numerator(prod) == 1);
    CHECK(denominator(prod) == 2);
    CHECK(is_integer(rat(4, 2)));
    CHECK_FALSE(is_integer(rat(1, 2)));
    CHECK(sign_of(rat(-1, 2)) == -1);
    CHECK(sign_of(Rational(0)) == 0);
    CHECK(sign_of(rat(1, 2)) == 1);
}
