// Acceptance suite: runs every criterion end to end and prints one line per
// criterion. All value comparisons are exact (no tolerances anywhere); time
// budgets are reported, and overruns flagged as warnings on the line.
//
// Exit code: number of failed criteria (0 = all green; conjecture-level
// evidence mismatches warn but do not fail).

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include "psimr/asymptotics.hpp"
#include "psimr/mr_engine.hpp"
#include "psimr/scans.hpp"
#include "psimr/store.hpp"
#include "psimr/verify.hpp"
#include "psimr/virasoro.hpp"

using namespace psimr;

namespace {

struct Outcome {
    bool pass = true;
    bool warn = false;
    std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, double budget_seconds,
         const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool over_budget = budget_seconds > 0 && secs > budget_seconds;
    std::ostringstream line;
    line << "[" << std::setw(2) << id << "] " << (out.pass ? (out.warn ? "WARN" : "PASS") : "FAIL")
         << "  " << name << ": " << out.detail << " (" << std::fixed << std::setprecision(1)
         << secs << "s";
    if (budget_seconds > 0)
        line << ", budget " << std::setprecision(0) << budget_seconds << "s"
             << (over_budget ? " EXCEEDED" : "");
    line << ")";
    std::cout << line.str() << std::endl;
    if (!out.pass) ++failures;
}

std::string plural(unsigned long long n, const char* what) {
    return std::to_string(n) + " " + what;
}

}  // namespace

int main() {
    std::cout << "psimr acceptance suite (exact arithmetic; no tolerances)" << std::endl;

    // Shared store: both producers cache here under separate namespaces.
    CorrelatorStore store;
    Engine engine(&store);  // single-threaded
    VirasoroOracle oracle(&store);

    run(1, "dual a-coefficient equivalence", 60, [&] {
        Outcome out;
        auto grid = dual_evaluation_grid(6, 12);
        auto rnd = dual_evaluation_random(8, 30, 10000, 0xACCE5501);
        out.pass = grid.mismatches == 0 && rnd.mismatches == 0;
        out.detail = "exhaustive n<=6, -1<=k<=12 (" + plural(grid.keys, "keys") +
                     ") + 10000 random n<=8, k<=30, " +
                     plural(grid.mismatches + rnd.mismatches, "mismatches");
        if (!grid.first_mismatch.empty()) out.detail += ", first " + grid.first_mismatch;
        return out;
    });

    run(2, "oracle equivalence (matrix-resolvent vs virasoro)", 600, [&] {
        Outcome out;
        auto sweep = oracle_equivalence_sweep(engine, oracle, 5, 5, 12);
        out.pass = sweep.mismatches == 0;
        out.detail = plural(sweep.keys, "stable keys (n<=5 g<=5; n=2 g<=12)") + ", " +
                     plural(sweep.mismatches, "mismatches");
        for (const auto& f : sweep.failures) out.detail += "\n      " + f;
        return out;
    });

    run(3, "one-point law <tau_{3g-2}> = 1/(24^g g!)", 0, [&] {
        Outcome out;
        auto list = one_point_checks(engine, oracle, 20);
        out.pass = list.pass();
        out.detail = "g = 1..20, engine and oracle, " + plural(list.failures, "failures");
        return out;
    });

    run(4, "normalized one-point G_{3g-2}(g) = 1", 0, [&] {
        Outcome out;
        unsigned long long bad = 0;
        for (long g = 1; g <= 20; ++g)
            if (engine.normalized_g(MultiIndex({3 * g - 2})) != 1) ++bad;
        out.pass = bad == 0;
        out.detail = "g = 1..20, " + plural(bad, "failures");
        return out;
    });

    run(5, "permutation class cardinalities", 30, [&] {
        Outcome out;
        auto list = permutation_class_checks(9);
        out.pass = list.pass();
        out.detail = "n <= 9: 2^{n-2}, binom(n-2,r-1), (2l)^{n-1} bound; " +
                     plural(list.checks, "checks") + ", " + plural(list.failures, "failures") +
                     (list.pass() ? "" : "; first: " + list.first_failure);
        return out;
    });

    // Criteria 6-8 share one sweep over all profiles with n <= 4, |d| <= 6.
    TheoremBSweep sweep;
    run(6, "rational reconstruction: polynomial structure", 300, [&] {
        Outcome out;
        sweep = theorem_b_sweep(engine, 4, 6);
        out.pass = sweep.poly.pass();
        out.detail = plural(sweep.profiles, "profiles (n<=4, |d|<=6)") +
                     ": degree, leading 6^{|d|}, constant term, integrality on g=-3..10, "
                     "2^{[|d|/3]}-scaled coefficients; " +
                     plural(sweep.poly.failures, "failures") +
                     (sweep.poly.pass() ? "" : "; first: " + sweep.poly.first_failure);
        return out;
    });

    run(7, "closed-form G_1/G_2 and C_1/C_2 match", 0, [&] {
        Outcome out;
        RationalFunctionInG rf = reconstruct(engine, 2, {1});
        SeriesCoefficients sc = series_coeffs(rf, 2);
        bool anchor =
            sc.G[0] == 1 && sc.G[1] == make_rational(-1, 3) && sc.G[2] == make_rational(-1, 18);
        out.pass = sweep.coeffs.pass() && anchor;
        out.detail = plural(sweep.coeffs.checks, "profile checks") + ", " +
                     plural(sweep.coeffs.failures, "failures") + "; anchor n=2 dfix=(1) series (1,-1/3,-1/18) " +
                     (anchor ? "ok" : "MISMATCH") +
                     (sweep.coeffs.pass() ? "" : "; first: " + sweep.coeffs.first_failure);
        return out;
    });

    run(8, "G_3 evidence (conjecture-level)", 0, [&] {
        Outcome out;
        out.pass = true;  // warning-level criterion
        out.warn = sweep.g3_failures != 0;
        out.detail = std::to_string(sweep.profiles - sweep.g3_failures) + "/" +
                     std::to_string(sweep.profiles) + " profiles match the closed form";
        if (out.warn) out.detail += "; first mismatch " + sweep.g3_mismatch_profiles.front();
        return out;
    });

    run(9, "dilaton/string recursion identities", 0, [&] {
        Outcome out;
        auto rep = check_gk_recursions(3, recursion_check_profiles());
        out.pass = rep.k12_zero;
        out.warn = !rep.k3_zero;
        out.detail = plural(rep.rows.size(), "profiles") + ": k<=2 residuals " +
                     (rep.k12_zero ? "all zero" : "NONZERO") + ", k=3 evidence " +
                     (rep.k3_zero ? "all zero" : "nonzero (conjecture-level)");
        return out;
    });

    run(10, "partial-sum identity for the 2-point coefficients", 30, [&] {
        Outcome out;
        auto list = zograf_checks(10);
        out.pass = list.pass();
        out.detail = "g <= 10, all 0 <= k <= 3g-2: " + plural(list.checks, "(g,k) pairs") + ", " +
                     plural(list.failures, "failures");
        return out;
    });

    run(11, "large-genus deviation trend (n=2, n=3)", 0, [&] {
        Outcome out;
        ScanCaps caps;
        auto rows2 = dgzz_scan(engine, 2, {5, 10, 20, 40}, caps);
        auto rows3 = dgzz_scan(engine, 3, {4, 8, 12}, caps);
        bool strict = true;
        std::ostringstream detail;
        detail << "max|G-1| n=2:";
        for (size_t i = 0; i < rows2.size(); ++i) {
            if (i && rows2[i].value >= rows2[i - 1].value) strict = false;
            detail << " g=" << rows2[i].g << ":" << decimal_approx(rows2[i].value);
        }
        detail << "; n=3:";
        for (size_t i = 0; i < rows3.size(); ++i) {
            if (i && rows3[i].value >= rows3[i - 1].value) strict = false;
            detail << " g=" << rows3[i].g << ":" << decimal_approx(rows3[i].value);
        }
        out.pass = strict;
        out.detail = detail.str() + (strict ? " (strictly decreasing)" : " NOT strictly decreasing");
        return out;
    });

    run(12, "uniform expansion residual trend (n=2, K=1,2)", 0, [&] {
        Outcome out;
        ScanCaps caps;
        bool decreasing = true;
        std::ostringstream detail;
        for (int K : {1, 2}) {
            auto rows = theorem3_scan(engine, 2, K, {10, 20, 40}, caps);
            detail << "K=" << K << ":";
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i && rows[i].value >= rows[i - 1].value) decreasing = false;
                detail << " g=" << rows[i].g << ":" << decimal_approx(rows[i].value);
            }
            detail << "  ";
        }
        out.pass = decreasing;
        out.detail = "g^K|G - sum P_k/g^k| over parts >= [3K/2]: " + detail.str() +
                     (decreasing ? "(decreasing)" : "NOT decreasing");
        return out;
    });

    run(13, "performance: full n=2 partition row at g=50", 0, [&] {
        Outcome out;
        ScanCaps caps;
        caps.max_sum = 200;  // explicit override for the large row
        auto rows = dgzz_scan(engine, 2, {50}, caps);
        out.pass = rows.size() == 1 && !rows[0].skipped;
        out.detail = "75 partitions of 149; max|G-1| = " + to_fraction_string(rows[0].value) +
                     " ~ " + decimal_approx(rows[0].value) + " at (" +
                     std::to_string(rows[0].argmax[0]) + "," + std::to_string(rows[0].argmax[1]) +
                     "); wall-clock reported, no correctness tolerance attached";
        return out;
    });

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria FAILED")
              << std::endl;
    return failures;
}
