#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "psimr/coefficients.hpp"
#include "psimr/permutations.hpp"
#include "psimr/store.hpp"

namespace psimr {

// Exponent tuple (d_1,...,d_n) of a correlator. The genus is derived:
// g = (sum - n + 3)/3 must be a nonnegative integer for a nonzero value.
struct MultiIndex {
    explicit MultiIndex(std::vector<long> ds);

    const std::vector<long>& ds() const { return ds_; }
    int n() const { return static_cast<int>(ds_.size()); }
    long sum() const { return sum_; }
    std::optional<long> genus() const;
    bool stable() const;  // 2g-2+n > 0, defined only when genus() holds

private:
    std::vector<long> ds_;
    long sum_ = 0;
};

using LatticePoint = std::vector<long>;

// J_{sigma,q}(j): -j-1 on an ascent (sigma(q) < sigma(q+1)), j on a descent,
// with sigma(n+1) read as sigma(1).
long j_exponent(const PermutationRecord& sigma, int q, long j);

// K_{d,sigma,q}(j) = d_{sigma(q)} + J_{sigma,q}(j_q) - J_{sigma,q-1}(j_{q-1}),
// with j_0 read as j_n.
long k_value(const MultiIndex& d, const PermutationRecord& sigma, int q, const LatticePoint& j);

struct EngineOptions {
    int jobs = 1;
    // Widens the lattice bound beyond 3g+2n-4. Values must not change; the
    // truncation-safety tests run with slack 2.
    long lattice_slack = 0;
};

// Evaluates normalized intersection numbers as a signed permutation/lattice
// sum over the cyclic trace coefficients, and converts them to raw
// correlators. Cyclic invariance of the trace coefficients lets the sum run
// over sigma(1) = 1 only, dropping the 1/n prefactor.
class Engine {
public:
    explicit Engine(CorrelatorStore* store = nullptr, EngineOptions opts = {});

    // G_{d_1...d_n}(g); 0 on dimension mismatch. Cached under the sorted key.
    Rational normalized_g(const MultiIndex& d) const;

    // <tau_{d_1}...tau_{d_n}> = G * (6g+2n-5)!! / (24^g g! prod (2d_j+1)!!).
    Rational correlator(const MultiIndex& d) const;

    // Same sum evaluated with the given ordering of d, bypassing all caches.
    Rational evaluate_direct(const MultiIndex& d) const;

    // gamma_{d,sigma}(g): one permutation's contribution.
    Rational gamma_term(const MultiIndex& d, const PermutationRecord& sigma) const;

    const EngineOptions& options() const { return opts_; }

private:
    Rational evaluate(const std::vector<long>& ds, long g) const;

    CorrelatorStore* store_ = nullptr;
    EngineOptions opts_;
    mutable std::shared_mutex memo_mutex_;
    mutable std::map<CorrelatorKey, Rational> memo_;
};

// kappa_{k_1...k_n}(g) =
//   24^{g+[n/2]-1} (g+[n/2]-1)! / (6g+2[3n/2]-7)!! * a_{k_1...k_n};
// requires n >= 2, g >= 0 and sum(k) = 3g-3+n.
Rational kappa_diagnostic(const ACoeffKey& ks, long g);

}  // namespace psimr
