#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "psimr/mr_engine.hpp"
#include "psimr/polynomial.hpp"

namespace psimr {

// Exponent-value multiplicities of a fixed tuple: p[i] is the multiplicity
// of i. Entries may go formally negative under the recursion shifts.
struct MultiplicityProfile {
    int n = 0;        // number of marked points
    long dsum = 0;    // |d|, sum of the fixed exponents
    std::vector<long> p;

    static MultiplicityProfile from_dfix(int n, const std::vector<long>& dfix);
    long pget(int i) const {
        return (i >= 0 && i < static_cast<int>(p.size())) ? p[i] : 0;
    }
};

// G_{d_1..d_{n-1}, 3g-3+n-|d|}(g) as numerator polynomial P(g) over the fixed
// denominator prod_{l=1}^{|d|} (6g + 2n - 3 - 2l).
struct RationalFunctionInG {
    int n = 0;
    std::vector<long> dfix;
    long dsum = 0;
    Polynomial numerator;

    // (6, 2n-3-2l) meaning the linear factor 6g + (2n-3-2l), l = 1..|d|.
    std::vector<std::pair<long, long>> denominator_factors() const;
    Rational denominator_eval(const Rational& g) const;
    Rational eval(const Rational& g) const;
};

// Interpolates the numerator from engine values at the smallest admissible
// genera (stable, d_n >= 0; integer genera never hit the poles since the
// factors 6g+odd are odd), then verifies three further genera. Throws
// std::logic_error if a verification point disagrees: that signals an engine
// bug, not a property failure.
RationalFunctionInG reconstruct(const Engine& engine, int n, const std::vector<long>& dfix);

struct TheoremBChecks {
    bool degree = false;                 // deg P = |d|
    bool leading = false;                // leading coefficient 6^{|d|}
    bool constant = false;               // P(0) = prod_l (n-l-2) * prod_j (2d_j+1)!!/d_j!
    bool integer_values = false;         // P(g) in Z for g = -3..10
    bool scaled_integer_coeffs = false;  // 2^{[|d|/3]} P in Z[g]
    bool all() const {
        return degree && leading && constant && integer_values && scaled_integer_coeffs;
    }
};

TheoremBChecks theorem_b_checks(const RationalFunctionInG& rf);

struct SeriesCoefficients {
    std::vector<Rational> C;  // C_0..C_K
    std::vector<Rational> G;  // G_0..G_K
};

// 1/g-expansions of both normalizations, each computed two ways (coefficient
// extraction from P, and exact power series division); throws
// std::logic_error if the routes disagree.
SeriesCoefficients series_coeffs(const RationalFunctionInG& rf, int K);

// Closed-form coefficient library. k = 1, 2 are proved; k = 3 is
// conjecture-level evidence. Values beyond k = 3 are not shipped.
Rational gk_closed(int k, const MultiplicityProfile& prof);
// The C-coefficient closed forms are stated in terms of the number of fixed
// exponents, i.e. they take n-1 where the G forms take n.
Rational ck_closed(int k, const MultiplicityProfile& prof);

struct GkLibraryReport {
    MultiplicityProfile profile;
    std::vector<Rational> extracted_G;  // G_0..G_3
    std::vector<Rational> closed_G;
    std::vector<Rational> extracted_C;  // C_0..C_2
    std::vector<Rational> closed_C;
    bool g12_ok = false;
    bool c12_ok = false;
    bool g3_ok = false;  // evidence only
};

// Compares extracted against closed-form coefficients at the profile of
// dfix. A G_1/G_2 mismatch throws std::logic_error (those are proved);
// everything else is report content.
GkLibraryReport check_gk_library(const Engine& engine, int n, const std::vector<long>& dfix);

struct RecursionCell {
    int k = 0;
    Rational dilaton_residual;
    Rational string_residual;
};

struct RecursionReport {
    std::vector<std::pair<MultiplicityProfile, std::vector<RecursionCell>>> rows;
    bool k12_zero = true;  // proved part: must hold
    bool k3_zero = true;   // evidence
};

// Substitutes the closed-form G_k into the dilaton- and string-equation
// recursions at each profile and reports the exact residuals, k = 0..K.
RecursionReport check_gk_recursions(int K, const std::vector<MultiplicityProfile>& profiles);

struct LiuXuValue {
    Rational P;                 // (6g)^{|d|} C, always defined
    std::optional<Rational> C;  // absent when g = 0 and |d| > 0
};

// C_{d_1..d_{n-1}}(g) and P = (6g)^{|d|} C from correlator values.
LiuXuValue liu_xu_c(const std::function<Rational(const MultiIndex&)>& correlator,
                    const std::vector<long>& dfix, long g);

}  // namespace psimr
