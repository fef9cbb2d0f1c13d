#pragma once

#include <gmpxx.h>

#include <string>

namespace psimr {

// Every value in the library is an exact rational. GMP keeps mpq_class
// canonical (lowest terms, positive denominator) through arithmetic, so the
// type invariants hold as long as construction goes through make_rational or
// the integer constructors.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den);

// Canonicalized num/den. Always use this (or make_rational) instead of the
// two-argument mpq_class constructor: GMP requires canonical form and the
// raw constructor does not reduce or normalize the sign.
Rational ratio(const Integer& num, const Integer& den);

// n! for n >= 0. Backed by a grow-only table (concurrent reads, exclusive
// growth).
Integer factorial(long n);

// k!! for k >= -1, with (-1)!! = 1. k <= -2 is a domain error: the formulas
// never define (-3)!! and reaching it means the caller left its domain.
Integer double_factorial(long k);

Integer binomial(long n, long k);

Integer pow_integer(long base, unsigned long exp);

Rational pow_rational(const Rational& base, long exp);

// "num/den" in base 10, denominator always explicit ("3/1", "-7/8").
std::string to_fraction_string(const Rational& v);

// Accepts "num/den" or a bare integer string.
Rational parse_fraction(const std::string& s);

// Truncated decimal rendering, for display columns that are explicitly
// labeled approximate. Never used in computations.
std::string decimal_approx(const Rational& v, int digits = 6);

}  // namespace psimr
