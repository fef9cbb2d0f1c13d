#pragma once

#include <utility>
#include <vector>

#include "psimr/rational.hpp"

namespace psimr {

// Dense univariate polynomial over Rational, coefficients ascending.
class Polynomial {
public:
    Polynomial() = default;  // zero polynomial
    explicit Polynomial(std::vector<Rational> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational eval(const Rational& x) const;

    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const Rational& s) const;
    bool operator==(const Polynomial& rhs) const = default;

    // Unique polynomial of degree < points.size() through the given points
    // (distinct abscissae).
    static Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points);

private:
    void trim();
    std::vector<Rational> coeffs_;
};

// Power series division num/den up to order K (den[0] != 0). Inputs are
// coefficient lists in the series variable, ascending; missing entries are 0.
std::vector<Rational> series_divide(std::vector<Rational> num, std::vector<Rational> den, int K);

}  // namespace psimr
