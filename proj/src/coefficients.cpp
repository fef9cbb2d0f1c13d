#include "psimr/coefficients.hpp"

#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace psimr {

namespace {

Rational b_coeff_uncached(long k) {
    long r = ((k % 3) + 3) % 3;
    if (r == 0) {
        long g = k / 3;
        return ratio(-double_factorial(6 * g - 1), pow_integer(24, g) * factorial(g));
    }
    if (r == 2) {
        long g = (k + 1) / 3;
        return ratio((6 * g + 1) * double_factorial(6 * g - 1),
                     (6 * g - 1) * pow_integer(24, g) * factorial(g));
    }
    long g = (k + 2) / 3;
    return ratio(double_factorial(6 * g - 5), 2 * pow_integer(24, g - 1) * factorial(g - 1));
}

std::shared_mutex b_mutex;
std::vector<Rational> b_table;  // b_table[k+1] = b_k

}  // namespace

Rational b_coeff(long k) {
    if (k < -1) throw std::domain_error("b_coeff: index below -1");
    {
        std::shared_lock lock(b_mutex);
        if (static_cast<size_t>(k + 1) < b_table.size()) return b_table[k + 1];
    }
    std::unique_lock lock(b_mutex);
    while (b_table.size() <= static_cast<size_t>(k + 1))
        b_table.push_back(b_coeff_uncached(static_cast<long>(b_table.size()) - 1));
    return b_table[k + 1];
}

Rational c_coeff(long k) {
    if (k < -1) throw std::domain_error("c_coeff: index below -1");
    return b_coeff(k) * Rational((k + 2) * (k + 2));
}

Mat2 Mat2::identity() { return {Rational(1), Rational(0), Rational(0), Rational(1)}; }

Mat2 Mat2::zero() { return {Rational(0), Rational(0), Rational(0), Rational(0)}; }

Mat2 Mat2::operator*(const Mat2& rhs) const {
    return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
            c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
}

Mat2 Mat2::operator*(const Rational& s) const { return {a * s, b * s, c * s, d * s}; }

Mat2 Mat2::operator-() const { return {-a, -b, -c, -d}; }

Rational Mat2::trace() const { return a + d; }

ACoeffKey canonical_rotation(const ACoeffKey& key) {
    if (key.empty()) return key;
    size_t n = key.size();
    size_t best = 0;
    for (size_t s = 1; s < n; ++s) {
        for (size_t i = 0; i < n; ++i) {
            long cand = key[(s + i) % n];
            long cur = key[(best + i) % n];
            if (cand != cur) {
                if (cand < cur) best = s;
                break;
            }
        }
    }
    ACoeffKey out(n);
    for (size_t i = 0; i < n; ++i) out[i] = key[(best + i) % n];
    return out;
}

Mat2 a_matrix_coeff(long k) {
    if (k < -1) throw std::domain_error("a_matrix_coeff: index below -1");
    Rational b = b_coeff(k);
    long r = ((k % 3) + 3) % 3;
    if (r == 0) return {Rational(0), b, Rational(0), Rational(0)};   // b_k * mu1
    if (r == 2) return {Rational(0), Rational(0), b, Rational(0)};   // b_k * mu2
    return {-b, Rational(0), Rational(0), b};                        // -b_k * mu3
}

Mat2 a_matrix(const ACoeffKey& key) {
    if (key.empty()) throw std::invalid_argument("a_matrix: empty key");
    Mat2 m = Mat2::identity();
    for (long k : key) m = m * a_matrix_coeff(k);
    return m;
}

Rational a_coeff_trace(const ACoeffKey& key) {
    if (key.empty()) throw std::invalid_argument("a_coeff_trace: empty key");
    for (long k : key)
        if (k <= -2) return Rational(0);
    return a_matrix(key).trace();
}

ResiduePattern classify_residues(const ACoeffKey& key) {
    ResiduePattern pat;
    for (long k : key)
        if (k <= -2) return pat;  // P7 by convention
    int n = static_cast<int>(key.size());
    std::vector<int> nonone_res;
    for (int i = 0; i < n; ++i) {
        int r = static_cast<int>(((key[i] % 3) + 3) % 3);
        if (r != 1) {
            pat.indices.push_back(i + 1);
            nonone_res.push_back(r);
        }
    }
    if (pat.indices.empty()) {
        pat.cls = n % 2 == 0 ? ResidueClass::P1 : ResidueClass::P4;
        pat.sign = n % 2 == 0 ? 1 : -1;
        return pat;
    }
    for (size_t i = 1; i < nonone_res.size(); ++i) {
        if (nonone_res[i] == nonone_res[i - 1]) {
            pat.indices.clear();
            return pat;  // P7
        }
    }
    const auto& idx = pat.indices;
    int first = nonone_res.front(), last = nonone_res.back();
    long e = 0;
    if (first == 0 && last == 2) {
        pat.cls = ResidueClass::P2;
        // gaps (i_0,i_1), (i_2,i_3), ..., (i_2s, i_{2s+1}) with i_0=0, i_{2s+1}=n+1
        std::vector<int> ext;
        ext.push_back(0);
        ext.insert(ext.end(), idx.begin(), idx.end());
        ext.push_back(n + 1);
        for (size_t j = 0; j + 1 < ext.size(); j += 2) e += ext[j + 1] - ext[j] - 1;
    } else if (first == 2 && last == 0) {
        pat.cls = ResidueClass::P3;
        for (size_t j = 0; j + 1 < idx.size(); j += 2) e += idx[j + 1] - idx[j] - 1;
    } else if (first == 0) {  // odd count, ends with 0
        pat.cls = ResidueClass::P5;
        std::vector<int> ext;
        ext.push_back(0);
        ext.insert(ext.end(), idx.begin(), idx.end());
        for (size_t j = 0; j + 1 < ext.size(); j += 2) e += ext[j + 1] - ext[j] - 1;
    } else {  // odd count, starts and ends with 2
        pat.cls = ResidueClass::P6;
        std::vector<int> ext(idx.begin(), idx.end());
        ext.push_back(n + 1);
        for (size_t j = 0; j + 1 < ext.size(); j += 2) e += ext[j + 1] - ext[j] - 1;
    }
    pat.sign = e % 2 == 0 ? 1 : -1;
    return pat;
}

namespace {

Rational b_product(const ACoeffKey& key) {
    Rational p(1);
    for (long k : key) p *= b_coeff(k);
    return p;
}

}  // namespace

Rational a_coeff_pattern(const ACoeffKey& key) {
    if (key.empty()) throw std::invalid_argument("a_coeff_pattern: empty key");
    ResiduePattern pat = classify_residues(key);
    switch (pat.cls) {
        case ResidueClass::P1:
            return 2 * b_product(key);
        case ResidueClass::P2:
        case ResidueClass::P3:
            return Rational(pat.sign) * b_product(key);
        default:
            return Rational(0);  // traceless or zero classes
    }
}

Mat2 a_matrix_pattern(const ACoeffKey& key) {
    if (key.empty()) throw std::invalid_argument("a_matrix_pattern: empty key");
    ResiduePattern pat = classify_residues(key);
    if (pat.cls == ResidueClass::P7) return Mat2::zero();
    Rational v = Rational(pat.sign) * b_product(key);
    switch (pat.cls) {
        case ResidueClass::P1:
            return {v, Rational(0), Rational(0), v};
        case ResidueClass::P2:
            return {v, Rational(0), Rational(0), Rational(0)};  // mu4
        case ResidueClass::P3:
            return {Rational(0), Rational(0), Rational(0), v};  // mu5
        case ResidueClass::P4:
            return {v, Rational(0), Rational(0), -v};  // -prod * mu3, sign = -1
        case ResidueClass::P5:
            return {Rational(0), v, Rational(0), Rational(0)};  // mu1
        case ResidueClass::P6:
            return {Rational(0), Rational(0), v, Rational(0)};  // mu2
        default:
            return Mat2::zero();
    }
}

Rational zograf_closed_form(long g, long k) {
    if (g < 1 || k < 0 || k > 3 * g - 2)
        throw std::domain_error("zograf_closed_form: need g >= 1, 0 <= k <= 3g-2");
    Rational pre = ratio(double_factorial(6 * g - 3 - 2 * k), double_factorial(6 * g - 1));
    long r = k % 3;
    if (r == 2) {  // k = 3j - 1
        long j = (k + 1) / 3;
        return pre * ratio(double_factorial(6 * j - 1) * factorial(g - 1) * (g - 2 * j),
                           factorial(j) * factorial(g - j));
    }
    if (r == 0) {  // k = 3j
        long j = k / 3;
        return pre * ratio(-2 * double_factorial(6 * j + 1) * factorial(g - 1),
                           factorial(j) * factorial(g - 1 - j));
    }
    long j = (k - 1) / 3;  // k = 3j + 1
    return pre * ratio(2 * double_factorial(6 * j + 3) * factorial(g - 1),
                       factorial(j) * factorial(g - 1 - j));
}

Rational zograf_partial_sum(long g, long k) {
    if (g < 1 || k < 0 || k > 3 * g - 2)
        throw std::domain_error("zograf_partial_sum: need g >= 1, 0 <= k <= 3g-2");
    Rational sum(0);
    for (long l = 0; l <= k + 1; ++l) sum += a_coeff_pattern({l - 1, 3 * g - l});
    Rational lhs = ratio(pow_integer(24, g) * factorial(g), double_factorial(6 * g - 1)) * sum;
    if (lhs != zograf_closed_form(g, k))
        throw std::logic_error("zograf_partial_sum: closed form mismatch at g=" +
                               std::to_string(g) + ", k=" + std::to_string(k));
    return lhs;
}

}  // namespace psimr
