#include "psimr/polynomial.hpp"

#include <stdexcept>

namespace psimr {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[i];
}

Rational Polynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    std::vector<Rational> out(std::max(coeffs_.size(), rhs.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = coeff(static_cast<int>(i)) + rhs.coeff(static_cast<int>(i));
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const {
    std::vector<Rational> out(std::max(coeffs_.size(), rhs.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < out.size(); ++i) out[i] = coeff(static_cast<int>(i)) - rhs.coeff(static_cast<int>(i));
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    if (coeffs_.empty() || rhs.coeffs_.empty()) return Polynomial();
    std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Rational& s) const {
    std::vector<Rational> out = coeffs_;
    for (auto& c : out) c *= s;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
    if (points.empty()) throw std::invalid_argument("interpolate: no points");
    // Newton form with divided differences.
    size_t n = points.size();
    std::vector<Rational> dd(n);
    for (size_t i = 0; i < n; ++i) dd[i] = points[i].second;
    for (size_t level = 1; level < n; ++level) {
        for (size_t i = n - 1; i >= level; --i) {
            Rational dx = points[i].first - points[i - level].first;
            if (dx == 0) throw std::invalid_argument("interpolate: repeated abscissa");
            dd[i] = (dd[i] - dd[i - 1]) / dx;
        }
    }
    Polynomial result(std::vector<Rational>{dd[n - 1]});
    for (size_t i = n - 1; i-- > 0;) {
        Polynomial factor(std::vector<Rational>{-points[i].first, Rational(1)});
        result = result * factor + Polynomial(std::vector<Rational>{dd[i]});
    }
    return result;
}

std::vector<Rational> series_divide(std::vector<Rational> num, std::vector<Rational> den, int K) {
    if (K < 0) throw std::domain_error("series_divide: negative order");
    if (den.empty() || den[0] == 0) throw std::domain_error("series_divide: denominator unit term is zero");
    num.resize(std::max<size_t>(num.size(), K + 1), Rational(0));
    den.resize(std::max<size_t>(den.size(), K + 1), Rational(0));
    std::vector<Rational> out(K + 1, Rational(0));
    for (int k = 0; k <= K; ++k) {
        Rational v = num[k];
        for (int j = 1; j <= k; ++j) v -= den[j] * out[k - j];
        out[k] = v / den[0];
    }
    return out;
}

}  // namespace psimr
