#pragma once

#include <vector>

#include "psimr/rational.hpp"

namespace psimr {

// Scalar coefficients b_k of the resolvent matrix series, k >= -1. The three
// branches follow the residue of k mod 3:
//   k = 3g   : -(6g-1)!!/(24^g g!)
//   k = 3g-1 : (6g+1)/(6g-1) * (6g-1)!!/(24^g g!)
//   k = 3g-2 : (6g-5)!!/(2 * 24^{g-1} (g-1)!)
Rational b_coeff(long k);

// c_k = b_k (k+2)^2.
Rational c_coeff(long k);

struct Mat2 {
    Rational a, b, c, d;  // row-major

    static Mat2 identity();
    static Mat2 zero();
    Mat2 operator*(const Mat2& rhs) const;
    Mat2 operator*(const Rational& s) const;
    Mat2 operator-() const;
    bool operator==(const Mat2& rhs) const = default;
    Rational trace() const;
};

// Index tuple of a cyclic trace coefficient a_{k1,...,kn}. Entries below -1
// are allowed as inputs to the trace/pattern evaluators (the value is 0 by
// convention) but not to a_matrix.
using ACoeffKey = std::vector<long>;

// Lexicographically minimal cyclic rotation; cache key canonicalization.
ACoeffKey canonical_rotation(const ACoeffKey& key);

// Coefficient matrix A_k of the resolvent series, k >= -1.
Mat2 a_matrix_coeff(long k);

// A_{k1} ... A_{kn} by direct matrix multiplication. All k_i >= -1.
Mat2 a_matrix(const ACoeffKey& key);

// tr(A_{k1} ... A_{kn}); keys containing any k <= -2 give 0.
Rational a_coeff_trace(const ACoeffKey& key);

// Residue classification of a key. The non-1 residues (mod 3), read left to
// right, must alternate 0,2,0,2,... for a nonzero product:
//   P1: all residues 1, n even (product is a multiple of I)
//   P2: alternation starts with 0, ends with 2       (multiple of mu4)
//   P3: starts with 2, ends with 0                   (multiple of mu5)
//   P4: all residues 1, n odd                        (multiple of mu3, traceless)
//   P5: starts and ends with 0                       (multiple of mu1, traceless)
//   P6: starts and ends with 2                       (multiple of mu2, traceless)
//   P7: alternation broken, or some k <= -2          (zero matrix)
enum class ResidueClass { P1, P2, P3, P4, P5, P6, P7 };

struct ResiduePattern {
    ResidueClass cls = ResidueClass::P7;
    std::vector<int> indices;  // 1-based positions of the non-1 residues
    int sign = 0;              // sign of the mu-monomial coefficient; 0 for P7
};

ResiduePattern classify_residues(const ACoeffKey& key);

// Closed-form evaluation of tr(A_{k1}...A_{kn}) through the residue pattern:
// 2*prod(b) for P1, sign*prod(b) for P2/P3, 0 otherwise. Independent of
// a_coeff_trace except for sharing b_coeff.
Rational a_coeff_pattern(const ACoeffKey& key);

// Closed-form of the full product A_{k1}...A_{kn} (all seven classes, with
// signs), for testing the trace identity at matrix level.
Mat2 a_matrix_pattern(const ACoeffKey& key);

// (24^g g!/(6g-1)!!) * sum_{l=0}^{k+1} a_{l-1,3g-l} for g >= 1,
// 0 <= k <= 3g-2. Checks the value against the three-branch closed form and
// throws std::logic_error on mismatch.
Rational zograf_partial_sum(long g, long k);

// The three-branch closed form (k = 3j-1, 3j, 3j+1) of the same quantity.
Rational zograf_closed_form(long g, long k);

}  // namespace psimr
