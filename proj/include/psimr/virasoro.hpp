#pragma once

#include <map>
#include <shared_mutex>

#include "psimr/mr_engine.hpp"
#include "psimr/store.hpp"

namespace psimr {

// Independent ground-truth computation of the same correlators from the
// Virasoro constraints. The recursion below is the coefficient extraction of
// L_m(Z) = 0 at m = max(d) - 1 (pivoting on the largest exponent):
//
//   (2m+3)!! <tau_{m+1} tau_D> =
//       sum_{j in D} (2d_j+2m+1)!!/(2d_j-1)!! <tau_{d_j+m} tau_{D\j}>_g
//     + 1/2 sum_{d=0}^{m-1} (2d+1)!!(2m-2d-1)!! (
//           <tau_d tau_{m-1-d} tau_D>_{g-1}
//         + sum_{g'+g''=g, I'+I''=D} <tau_d tau_{I'}>_{g'} <tau_{m-1-d} tau_{I''}>_{g''} )
//     + 1/8 [m = 0, D empty, g = 1]
//
// with base case <tau_0^3>_0 = 1 (forced by the m = -1 constraint).
// Unstable or dimension-mismatched subkeys contribute zero.
class VirasoroOracle {
public:
    explicit VirasoroOracle(CorrelatorStore* store = nullptr);

    // Full recursion; 0 on dimension mismatch, error on unstable input.
    Rational correlator(const MultiIndex& d);

    // One string-equation step (some d_i = 0, removed; each d_j >= 1 in the
    // remainder drops by one), then the full recursion.
    Rational string_reduce(const MultiIndex& d);

    // One dilaton-equation step (some d_i = 1 removed, factor 2g-2+(n-1)).
    Rational dilaton_reduce(const MultiIndex& d);

private:
    Rational eval(long g, const std::vector<long>& sorted_ds);

    CorrelatorStore* store_ = nullptr;
    std::shared_mutex memo_mutex_;
    std::map<CorrelatorKey, Rational> memo_;
};

}  // namespace psimr
