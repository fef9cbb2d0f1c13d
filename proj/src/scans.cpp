#include "psimr/scans.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace psimr {

namespace {

void partition_rec(long total, int parts, long min_part, long max_part, std::vector<long>& acc,
                   const std::function<void(const std::vector<long>&)>& fn) {
    if (parts == 1) {
        if (total >= min_part && total <= max_part) {
            acc.push_back(total);
            fn(acc);
            acc.pop_back();
        }
        return;
    }
    long lo = (total + parts - 1) / parts;  // keep d_1 >= remaining parts' average
    lo = std::max(lo, min_part);
    long hi = std::min(max_part, total - min_part * (parts - 1));
    for (long d = hi; d >= lo; --d) {
        acc.push_back(d);
        partition_rec(total - d, parts - 1, min_part, d, acc, fn);
        acc.pop_back();
    }
}

void check_caps(int n, long g, long min_part, const ScanCaps& caps, unsigned long long& count_out) {
    if (n < 1) throw std::invalid_argument("scan: need n >= 1");
    if (n > caps.max_n)
        throw std::invalid_argument("scan refused: n = " + std::to_string(n) + " exceeds cap " +
                                    std::to_string(caps.max_n) + " (raise --max-n)");
    if (2 * g - 2 + n <= 0)
        throw std::invalid_argument("scan: unstable (g,n) at g = " + std::to_string(g));
    long total = 3 * g - 3 + n;
    if (total > caps.max_sum)
        throw std::invalid_argument("scan refused: 3g-3+n = " + std::to_string(total) +
                                    " exceeds cap " + std::to_string(caps.max_sum) +
                                    " (raise --max-sum)");
    count_out = count_partitions(total, n, min_part);
    if (count_out > caps.max_partitions)
        throw std::invalid_argument("scan refused: " + std::to_string(count_out) +
                                    " partitions exceed cap " +
                                    std::to_string(caps.max_partitions) +
                                    " (raise --max-partitions)");
}

// Deterministic parallel map-and-argmax: deviations land in slots indexed by
// enumeration order, the max is then taken sequentially.
ScanRow scan_cell(const Engine& engine, long g, int n, long min_part,
                  const std::function<Rational(const MultiIndex&)>& deviation, int jobs) {
    long total = 3 * g - 3 + n;
    std::vector<std::vector<long>> partitions;
    for_each_partition(total, n, min_part, [&](const std::vector<long>& d) { partitions.push_back(d); });
    ScanRow row;
    row.g = g;
    if (partitions.empty()) {
        row.skipped = true;
        return row;
    }
    std::vector<Rational> devs(partitions.size());
    auto work = [&](size_t i) { devs[i] = deviation(MultiIndex(partitions[i])); };
    if (jobs <= 1) {
        for (size_t i = 0; i < partitions.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&]() {
                for (size_t i = next.fetch_add(1); i < partitions.size(); i = next.fetch_add(1))
                    work(i);
            });
        for (auto& th : pool) th.join();
    }
    size_t best = 0;
    for (size_t i = 1; i < devs.size(); ++i)
        if (devs[i] > devs[best]) best = i;
    row.value = devs[best];
    row.argmax = partitions[best];
    return row;
}

}  // namespace

void for_each_partition(long total, int parts, long min_part,
                        const std::function<void(const std::vector<long>&)>& fn) {
    if (parts < 1 || total < 0) return;
    std::vector<long> acc;
    acc.reserve(parts);
    partition_rec(total, parts, min_part, total, acc, fn);
}

unsigned long long count_partitions(long total, int parts, long min_part) {
    if (parts < 1 || total < 0) return 0;
    if (parts == 1) return total >= min_part ? 1 : 0;
    unsigned long long count = 0;
    for_each_partition(total, parts, min_part, [&](const std::vector<long>&) { ++count; });
    return count;
}

std::vector<ScanRow> dgzz_scan(const Engine& engine, int n, const std::vector<long>& g_list,
                               const ScanCaps& caps, int jobs) {
    std::vector<ScanRow> rows;
    for (long g : g_list) {
        unsigned long long count = 0;
        check_caps(n, g, 0, caps, count);
        auto deviation = [&](const MultiIndex& d) {
            Rational dev = engine.normalized_g(d) - 1;
            return dev < 0 ? Rational(-dev) : dev;
        };
        rows.push_back(scan_cell(engine, g, n, 0, deviation, jobs));
    }
    return rows;
}

std::vector<ScanRow> theorem3_scan(const Engine& engine, int n, int K,
                                   const std::vector<long>& g_list, const ScanCaps& caps,
                                   int jobs) {
    if (K < 0 || K > 3) throw std::invalid_argument("theorem3_scan: K must be in 0..3");
    long min_part = (3 * K) / 2;
    MultiplicityProfile zero;  // P_k(n) = G_k at all multiplicities zero
    zero.n = n;
    zero.p.assign(4, 0);
    std::vector<ScanRow> rows;
    for (long g : g_list) {
        unsigned long long count = 0;
        check_caps(n, g, min_part, caps, count);
        Rational approx(0);
        Rational gpow(1);
        for (int k = 0; k <= K; ++k) {
            approx += gk_closed(k, zero) / gpow;
            gpow *= g;
        }
        Rational scale = pow_rational(Rational(g), K);
        auto residual = [&, approx, scale](const MultiIndex& d) {
            Rational r = engine.normalized_g(d) - approx;
            if (r < 0) r = -r;
            return Rational(scale * r);
        };
        rows.push_back(scan_cell(engine, g, n, min_part, residual, jobs));
    }
    return rows;
}

}  // namespace psimr
