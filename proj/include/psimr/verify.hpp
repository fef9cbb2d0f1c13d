#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psimr/asymptotics.hpp"
#include "psimr/mr_engine.hpp"
#include "psimr/virasoro.hpp"

namespace psimr {

// Shared building blocks for the CLI verify command and the acceptance
// suite. All comparisons are exact; "ok" never involves a tolerance.

struct DualGridResult {
    unsigned long long keys = 0;
    unsigned long long mismatches = 0;
    std::string first_mismatch;
};

// Exhaustive trace-vs-pattern comparison over all keys with 1 <= n <= n_max,
// -1 <= k_i <= k_max, walked with incremental prefix products.
DualGridResult dual_evaluation_grid(int n_max, long k_max);

// Same comparison on seeded random keys.
DualGridResult dual_evaluation_random(int n_max, long k_max, int count, uint64_t seed);

struct SweepResult {
    unsigned long long keys = 0;
    unsigned long long mismatches = 0;
    std::vector<std::string> failures;
};

// MR vs Virasoro over every stable key with n <= n_max, g <= g_max, plus
// n = 2 up to g_max_n2. Both producers run against the same store (separate
// namespaces), so a disagreement also trips the store integrity alarm.
SweepResult oracle_equivalence_sweep(const Engine& engine, VirasoroOracle& oracle, int n_max,
                                     long g_max, long g_max_n2);

struct CheckList {
    unsigned long long checks = 0;
    unsigned long long failures = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& label);
    bool pass() const { return failures == 0; }
};

// One-point law: engine and oracle correlators equal 1/(24^g g!) and the
// normalized value is 1, for g = 1..g_max.
CheckList one_point_checks(const Engine& engine, VirasoroOracle& oracle, long g_max);

// Permutation class cardinalities for n <= n_max: |{2}-class| = 2^{n-2},
// |(r,n-r)-class| = binom(n-2,r-1), |{2l}-class| <= (2l)^{n-1}.
CheckList permutation_class_checks(int n_max);

// Zograf-type partial sums against the closed form, g <= g_max, all k.
CheckList zograf_checks(long g_max);

// Theorem B checks plus coefficient-library comparison over all profiles
// with n <= n_max and |d| <= dsum_max. poly holds the polynomial-structure
// checks, coeffs the proved closed-form comparisons (G_1/G_2, C_1/C_2);
// g3_failures counts profiles where the conjecture-level G_3 disagrees.
struct TheoremBSweep {
    CheckList poly;
    CheckList coeffs;
    unsigned long long profiles = 0;
    unsigned long long g3_failures = 0;
    std::vector<std::string> g3_mismatch_profiles;

    bool hard_pass() const { return poly.pass() && coeffs.pass(); }
};

TheoremBSweep theorem_b_sweep(const Engine& engine, int n_max, long dsum_max);

// Every multiset dfix (size n-1, sum <= dsum_max) for 1 <= n <= n_max.
std::vector<std::pair<int, std::vector<long>>> all_profiles(int n_max, long dsum_max);

// Default profile set for the recursion checks.
std::vector<MultiplicityProfile> recursion_check_profiles();

}  // namespace psimr
