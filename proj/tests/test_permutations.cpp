#include <doctest.h>

#include <map>

#include "psimr/permutations.hpp"
#include "psimr/rational.hpp"

using namespace psimr;

TEST_CASE("n=2: the single record") {
    auto perms = enumerate_permutations(2);
    REQUIRE(perms.size() == 1);
    CHECK(perms[0].sigma == std::vector<int>{1, 2});
    CHECK(perms[0].m == 1);
    CHECK(perms[0].l == 1);
    CHECK(perms[0].runs == std::vector<int>{1, 2});
    CHECK(perms[0].unimodal_r() == 1);
}

TEST_CASE("record counts and classes for small n") {
    CHECK(enumerate_permutations(4).size() == 6);
    CHECK(enumerate_permutations(5).size() == 24);
    int unimodal4 = 0;
    for (const auto& rec : enumerate_permutations(4))
        if (rec.is_unimodal()) ++unimodal4;
    CHECK(unimodal4 == 4);  // 2^{4-2}
    int unimodal5 = 0;
    for (const auto& rec : enumerate_permutations(5))
        if (rec.is_unimodal()) ++unimodal5;
    CHECK(unimodal5 == 8);  // 2^{5-2}
}

TEST_CASE("class cardinalities up to n=7") {
    for (int n = 2; n <= 7; ++n) {
        auto perms = enumerate_permutations(n);
        CHECK(Integer(perms.size()) == factorial(n - 1));
        std::map<int, long> by_l;
        std::map<int, long> by_r;
        for (const auto& rec : perms) {
            ++by_l[rec.l];
            CHECK(rec.l >= 1);
            CHECK(static_cast<int>(rec.runs.size()) == 2 * rec.l);
            CHECK(rec.runs[0] == 1);
            if (rec.is_unimodal()) ++by_r[rec.unimodal_r()];
        }
        CHECK(Integer(by_l[1]) == pow_integer(2, n - 2));
        for (int r = 1; r <= n - 1; ++r) CHECK(Integer(by_r[r]) == binomial(n - 2, r - 1));
        for (auto [l, cnt] : by_l) CHECK(Integer(cnt) <= pow_integer(2 * l, n - 1));
    }
}

TEST_CASE("descent counts match the cyclic definition") {
    for (const auto& rec : enumerate_permutations(5)) {
        int n = rec.n();
        int m = 0;
        for (int q = 1; q <= n; ++q) {
            int here = rec.sigma[q - 1];
            int next = rec.sigma[q % n];
            if (next < here) ++m;
        }
        CHECK(rec.m == m);
    }
}

TEST_CASE("annotate_permutation validates input") {
    CHECK_THROWS_AS(annotate_permutation({2, 1}), std::invalid_argument);
    CHECK_THROWS_AS(annotate_permutation({1}), std::invalid_argument);
    auto rec = annotate_permutation({1, 3, 2});
    CHECK(rec.m == 2);
    CHECK(rec.l == 1);
    CHECK(rec.runs == std::vector<int>{1, 2});
}
