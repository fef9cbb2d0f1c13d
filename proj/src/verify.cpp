#include "psimr/verify.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "psimr/permutations.hpp"
#include "psimr/scans.hpp"

namespace psimr {

namespace {

std::string key_to_string(const ACoeffKey& key) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < key.size(); ++i) os << (i ? "," : "") << key[i];
    os << ")";
    return os.str();
}

std::string ds_to_string(long g, const std::vector<long>& ds) {
    std::ostringstream os;
    os << "g=" << g << " d=(";
    for (size_t i = 0; i < ds.size(); ++i) os << (i ? "," : "") << ds[i];
    os << ")";
    return os.str();
}

// Incremental dual evaluation: walks the key tree keeping the prefix matrix
// product (trace route) alongside the prefix b-product and residue state
// (pattern route), comparing at every node.
struct GridWalker {
    long k_max;
    int n_max;
    DualGridResult res;
    std::vector<Mat2> a_table;
    std::vector<Rational> b_table;
    std::vector<Mat2> prefix_m;
    std::vector<Rational> prefix_b;
    std::vector<std::pair<int, int>> nonones;
    ACoeffKey key;

    GridWalker(int n_max_, long k_max_) : k_max(k_max_), n_max(n_max_) {
        for (long k = -1; k <= k_max; ++k) {
            a_table.push_back(a_matrix_coeff(k));
            b_table.push_back(b_coeff(k));
        }
        prefix_m.assign(n_max + 1, Mat2::identity());
        prefix_b.assign(n_max + 1, Rational(1));
        key.assign(n_max, 0);
    }

    Rational pattern_value(int n, bool alternation_ok) const {
        if (!alternation_ok) return Rational(0);
        if (nonones.empty()) return n % 2 == 0 ? Rational(2) * prefix_b[n] : Rational(0);
        int first = nonones.front().second, last = nonones.back().second;
        if (first == last) return Rational(0);
        long e = 0;
        if (first == 0) {
            long prev = 0;
            for (size_t t = 0; t < nonones.size(); t += 2) {
                e += nonones[t].first - prev - 1;
                if (t + 1 < nonones.size()) prev = nonones[t + 1].first;
            }
            e += n - nonones.back().first;
        } else {
            for (size_t t = 0; t + 1 < nonones.size(); t += 2)
                e += nonones[t + 1].first - nonones[t].first - 1;
        }
        return e % 2 == 0 ? prefix_b[n] : Rational(-prefix_b[n]);
    }

    void walk(int depth, bool alternation_ok) {
        for (long k = -1; k <= k_max; ++k) {
            key[depth] = k;
            prefix_m[depth + 1] = prefix_m[depth] * a_table[k + 1];
            mpq_mul(prefix_b[depth + 1].get_mpq_t(), prefix_b[depth].get_mpq_t(),
                    b_table[k + 1].get_mpq_t());
            int r = static_cast<int>(((k % 3) + 3) % 3);
            bool ok_here = alternation_ok;
            bool pushed = false;
            if (r != 1 && ok_here) {
                if (!nonones.empty() && nonones.back().second == r) {
                    ok_here = false;
                } else {
                    nonones.emplace_back(depth + 1, r);
                    pushed = true;
                }
            }
            ++res.keys;
            Rational trace = prefix_m[depth + 1].trace();
            Rational pattern = pattern_value(depth + 1, ok_here);
            if (trace != pattern) {
                ++res.mismatches;
                if (res.first_mismatch.empty())
                    res.first_mismatch =
                        key_to_string(ACoeffKey(key.begin(), key.begin() + depth + 1));
            }
            if (depth + 1 < n_max) walk(depth + 1, ok_here);
            if (pushed) nonones.pop_back();
        }
    }
};

}  // namespace

DualGridResult dual_evaluation_grid(int n_max, long k_max) {
    GridWalker walker(n_max, k_max);
    walker.walk(0, true);
    return walker.res;
}

DualGridResult dual_evaluation_random(int n_max, long k_max, int count, uint64_t seed) {
    DualGridResult res;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_n(1, n_max);
    std::uniform_int_distribution<long> pick_k(-1, k_max);
    for (int i = 0; i < count; ++i) {
        ACoeffKey key(pick_n(rng));
        for (auto& k : key) k = pick_k(rng);
        ++res.keys;
        if (a_coeff_trace(key) != a_coeff_pattern(key)) {
            ++res.mismatches;
            if (res.first_mismatch.empty()) res.first_mismatch = key_to_string(key);
        }
    }
    return res;
}

SweepResult oracle_equivalence_sweep(const Engine& engine, VirasoroOracle& oracle, int n_max,
                                     long g_max, long g_max_n2) {
    SweepResult res;
    auto run_key = [&](long g, const std::vector<long>& ds) {
        MultiIndex d(ds);
        Rational mr = engine.correlator(d);
        Rational vir = oracle.correlator(d);
        ++res.keys;
        if (mr != vir) {
            ++res.mismatches;
            if (res.failures.size() < 8)
                res.failures.push_back(ds_to_string(g, ds) + ": mr=" + to_fraction_string(mr) +
                                       " virasoro=" + to_fraction_string(vir));
        }
    };
    for (int n = 1; n <= n_max; ++n) {
        long top = n == 2 ? std::max(g_max, g_max_n2) : g_max;
        for (long g = 0; g <= top; ++g) {
            if (2 * g - 2 + n <= 0) continue;
            long total = 3 * g - 3 + n;
            if (total < 0) continue;
            for_each_partition(total, n, 0,
                               [&](const std::vector<long>& ds) { run_key(g, ds); });
        }
    }
    return res;
}

void CheckList::expect(bool ok, const std::string& label) {
    ++checks;
    if (!ok) {
        ++failures;
        if (first_failure.empty()) first_failure = label;
    }
}

CheckList one_point_checks(const Engine& engine, VirasoroOracle& oracle, long g_max) {
    CheckList list;
    for (long g = 1; g <= g_max; ++g) {
        MultiIndex d({3 * g - 2});
        Rational want = ratio(1, pow_integer(24, g) * factorial(g));
        list.expect(engine.correlator(d) == want, "engine one-point law at g=" + std::to_string(g));
        list.expect(oracle.correlator(d) == want, "oracle one-point law at g=" + std::to_string(g));
        list.expect(engine.normalized_g(d) == 1, "normalized one-point at g=" + std::to_string(g));
    }
    return list;
}

CheckList permutation_class_checks(int n_max) {
    CheckList list;
    for (int n = 2; n <= n_max; ++n) {
        auto perms = enumerate_permutations(n);
        list.expect(perms.size() == static_cast<size_t>(factorial(n - 1).get_ui()),
                    "permutation count at n=" + std::to_string(n));
        std::map<int, long> by_l;
        std::map<int, long> by_r;
        for (const auto& rec : perms) {
            ++by_l[rec.l];
            if (rec.is_unimodal()) ++by_r[rec.unimodal_r()];
        }
        list.expect(Integer(by_l[1]) == pow_integer(2, n - 2),
                    "unimodal class count at n=" + std::to_string(n));
        for (int r = 1; r <= n - 1; ++r)
            list.expect(Integer(by_r[r]) == binomial(n - 2, r - 1),
                        "(r,n-r) count at n=" + std::to_string(n) + ", r=" + std::to_string(r));
        for (const auto& [l, count] : by_l)
            list.expect(Integer(count) <= pow_integer(2 * l, n - 1),
                        "{2l} class bound at n=" + std::to_string(n) + ", l=" + std::to_string(l));
    }
    return list;
}

CheckList zograf_checks(long g_max) {
    CheckList list;
    for (long g = 1; g <= g_max; ++g) {
        for (long k = 0; k <= 3 * g - 2; ++k) {
            bool ok = false;
            try {
                ok = zograf_partial_sum(g, k) == zograf_closed_form(g, k);
            } catch (const std::logic_error&) {
                ok = false;
            }
            list.expect(ok, "zograf identity at g=" + std::to_string(g) + ", k=" + std::to_string(k));
        }
    }
    return list;
}

std::vector<std::pair<int, std::vector<long>>> all_profiles(int n_max, long dsum_max) {
    std::vector<std::pair<int, std::vector<long>>> out;
    for (int n = 1; n <= n_max; ++n) {
        if (n == 1) {
            out.emplace_back(1, std::vector<long>{});
            continue;
        }
        for (long s = 0; s <= dsum_max; ++s) {
            for_each_partition(s, n - 1, 0, [&](const std::vector<long>& dfix) {
                out.emplace_back(n, dfix);
            });
        }
    }
    return out;
}

TheoremBSweep theorem_b_sweep(const Engine& engine, int n_max, long dsum_max) {
    TheoremBSweep sweep;
    for (const auto& [n, dfix] : all_profiles(n_max, dsum_max)) {
        std::ostringstream label;
        label << "n=" << n << " dfix=" << key_to_string(std::vector<long>(dfix));
        ++sweep.profiles;
        try {
            RationalFunctionInG rf = reconstruct(engine, n, dfix);
            TheoremBChecks checks = theorem_b_checks(rf);
            sweep.poly.expect(checks.degree, label.str() + ": numerator degree");
            sweep.poly.expect(checks.leading, label.str() + ": leading coefficient");
            sweep.poly.expect(checks.constant, label.str() + ": constant term");
            sweep.poly.expect(checks.integer_values, label.str() + ": integer values");
            sweep.poly.expect(checks.scaled_integer_coeffs, label.str() + ": scaled coefficients");
            GkLibraryReport rep = check_gk_library(engine, n, dfix);
            sweep.coeffs.expect(rep.g12_ok, label.str() + ": G_1/G_2 closed form");
            sweep.coeffs.expect(rep.c12_ok, label.str() + ": C_1/C_2 closed form");
            if (!rep.g3_ok) {
                ++sweep.g3_failures;
                sweep.g3_mismatch_profiles.push_back(label.str());
            }
        } catch (const std::exception& e) {
            sweep.poly.expect(false, label.str() + ": " + e.what());
        }
    }
    return sweep;
}

std::vector<MultiplicityProfile> recursion_check_profiles() {
    std::vector<MultiplicityProfile> out;
    for (int n : {2, 3, 4, 5, 6}) {
        for (long p0 : {0, 1, 2}) {
            for (long p1 : {0, 1}) {
                for (long p2 : {0, 1}) {
                    for (long p3 : {0, 2}) {
                        MultiplicityProfile prof;
                        prof.n = n;
                        prof.p = {p0, p1, p2, p3};
                        prof.dsum = p1 + 2 * p2 + 3 * p3;
                        out.push_back(prof);
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace psimr
