#include "psimr/rational.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <vector>

namespace psimr {

Rational make_rational(long num, long den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational ratio(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("ratio: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

std::shared_mutex fact_mutex;
std::vector<Integer> fact_table{1};  // fact_table[n] = n!

std::shared_mutex dfact_mutex;
std::vector<Integer> dfact_table{1, 1};  // dfact_table[k+1] = k!!, from k = -1

}  // namespace

Integer factorial(long n) {
    if (n < 0) throw std::domain_error("factorial: negative argument");
    {
        std::shared_lock lock(fact_mutex);
        if (static_cast<size_t>(n) < fact_table.size()) return fact_table[n];
    }
    std::unique_lock lock(fact_mutex);
    while (fact_table.size() <= static_cast<size_t>(n))
        fact_table.push_back(fact_table.back() * static_cast<long>(fact_table.size()));
    return fact_table[n];
}

Integer double_factorial(long k) {
    if (k < -1) throw std::domain_error("double_factorial: argument below -1");
    {
        std::shared_lock lock(dfact_mutex);
        if (static_cast<size_t>(k + 1) < dfact_table.size()) return dfact_table[k + 1];
    }
    std::unique_lock lock(dfact_mutex);
    while (dfact_table.size() <= static_cast<size_t>(k + 1)) {
        long next = static_cast<long>(dfact_table.size()) - 1;  // value whose !! we add
        dfact_table.push_back(dfact_table[next - 1] * next);
    }
    return dfact_table[k + 1];
}

Integer binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer pow_integer(long base, unsigned long exp) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 1, 1);
    Integer b(base);
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

Rational pow_rational(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) throw std::domain_error("pow_rational: zero base, negative exponent");
    Rational acc(1);
    Rational b = exp > 0 ? base : Rational(1) / base;
    for (long i = 0; i < (exp > 0 ? exp : -exp); ++i) acc *= b;
    return acc;
}

std::string to_fraction_string(const Rational& v) {
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational parse_fraction(const std::string& s) {
    auto slash = s.find('/');
    Integer num, den;
    try {
        if (slash == std::string::npos) {
            num = Integer(s);
            den = 1;
        } else {
            num = Integer(s.substr(0, slash));
            den = Integer(s.substr(slash + 1));
        }
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("parse_fraction: malformed rational '" + s + "'");
    }
    if (den == 0) throw std::runtime_error("parse_fraction: zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string decimal_approx(const Rational& v, int digits) {
    bool negative = v < 0;
    Rational a = negative ? Rational(-v) : v;
    Integer scale = pow_integer(10, static_cast<unsigned long>(digits));
    Integer scaled = (a.get_num() * scale) / a.get_den();  // truncation
    std::string body = scaled.get_str();
    if (static_cast<int>(body.size()) <= digits)
        body.insert(0, std::string(digits + 1 - body.size(), '0'));
    body.insert(body.size() - digits, ".");
    return (negative ? "-" : "") + body;
}

}  // namespace psimr
