#pragma once

#include <functional>
#include <string>
#include <vector>

#include "psimr/asymptotics.hpp"
#include "psimr/mr_engine.hpp"

namespace psimr {

// Enumeration limits for the scan commands. The defaults hold desk-scale
// runs; callers may raise them explicitly.
struct ScanCaps {
    int max_n = 4;
    long max_sum = 140;                       // cap on 3g-3+n
    unsigned long long max_partitions = 20'000'000;
};

// Partitions total = d_1 + ... + d_parts with d_1 >= ... >= d_parts >= min_part,
// visited in decreasing lexicographic order of (d_1, d_2, ...).
void for_each_partition(long total, int parts, long min_part,
                        const std::function<void(const std::vector<long>&)>& fn);

unsigned long long count_partitions(long total, int parts, long min_part);

struct ScanRow {
    long g = 0;
    bool skipped = false;       // no admissible partition at this g
    Rational value;             // max deviation / residual
    std::vector<long> argmax;   // first maximizing partition in enumeration order
};

// For each g: max over partitions d of |G_d(g) - 1| plus the maximizer.
std::vector<ScanRow> dgzz_scan(const Engine& engine, int n, const std::vector<long>& g_list,
                               const ScanCaps& caps = {}, int jobs = 1);

// For each g: max over partitions with all parts >= [3K/2] of
// g^K |G_d(g) - sum_{k<=K} P_k(n)/g^k| with P_k(n) = gk_closed(k) at all
// multiplicities zero.
std::vector<ScanRow> theorem3_scan(const Engine& engine, int n, int K,
                                   const std::vector<long>& g_list, const ScanCaps& caps = {},
                                   int jobs = 1);

}  // namespace psimr
