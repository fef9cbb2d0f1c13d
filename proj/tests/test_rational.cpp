#include <doctest.h>

#include "psimr/rational.hpp"

using namespace psimr;

TEST_CASE("factorial and double factorial") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(10) == 3628800);
    CHECK_THROWS_AS(factorial(-1), std::domain_error);

    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(0) == 1);
    CHECK(double_factorial(1) == 1);
    CHECK(double_factorial(5) == 15);
    CHECK(double_factorial(6) == 48);
    CHECK(double_factorial(9) == 945);
    CHECK_THROWS_AS(double_factorial(-2), std::domain_error);
    CHECK_THROWS_AS(double_factorial(-3), std::domain_error);
}

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(4, 7) == 0);
    CHECK(binomial(4, -1) == 0);
}

TEST_CASE("make_rational canonicalizes") {
    CHECK(make_rational(2, 4) == make_rational(1, 2));
    CHECK(make_rational(1, -2) == make_rational(-1, 2));
    CHECK(make_rational(3, -6).get_den() == 2);
    CHECK_THROWS_AS(make_rational(1, 0), std::domain_error);
}

TEST_CASE("fraction strings round-trip") {
    Rational v = make_rational(-7, 8);
    CHECK(to_fraction_string(v) == "-7/8");
    CHECK(parse_fraction("-7/8") == v);
    CHECK(parse_fraction("5") == Rational(5));
    CHECK(to_fraction_string(Rational(3)) == "3/1");
    CHECK(parse_fraction(to_fraction_string(make_rational(1234567, 987))) ==
          make_rational(1234567, 987));
    CHECK_THROWS(parse_fraction("x/7"));
    CHECK_THROWS(parse_fraction("1/0"));
}

TEST_CASE("decimal approximation is labeled-only output") {
    CHECK(decimal_approx(make_rational(1, 3), 4) == "0.3333");
    CHECK(decimal_approx(make_rational(-1, 2), 3) == "-0.500");
    CHECK(decimal_approx(Rational(12), 2) == "12.00");
}
