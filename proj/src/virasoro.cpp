#include "psimr/virasoro.hpp"

#include <algorithm>
#include <stdexcept>

namespace psimr {

namespace {

bool all_zero(const std::vector<long>& ds) {
    return std::all_of(ds.begin(), ds.end(), [](long d) { return d == 0; });
}

long sum_of(const std::vector<long>& ds) {
    long s = 0;
    for (long d : ds) s += d;
    return s;
}

std::vector<long> sorted_desc(std::vector<long> ds) {
    std::sort(ds.begin(), ds.end(), std::greater<long>());
    return ds;
}

}  // namespace

VirasoroOracle::VirasoroOracle(CorrelatorStore* store) : store_(store) {}

Rational VirasoroOracle::correlator(const MultiIndex& d) {
    auto g = d.genus();
    if (!g) return Rational(0);
    if (!d.stable()) throw std::domain_error("VirasoroOracle::correlator: unstable (g,n)");
    return eval(*g, sorted_desc(d.ds()));
}

Rational VirasoroOracle::string_reduce(const MultiIndex& d) {
    auto g = d.genus();
    if (!g) return Rational(0);
    if (d.n() < 2) throw std::invalid_argument("string_reduce: need n >= 2");
    std::vector<long> rest = d.ds();
    auto it = std::find(rest.begin(), rest.end(), 0L);
    if (it == rest.end()) throw std::invalid_argument("string_reduce: no zero exponent");
    rest.erase(it);
    Rational acc(0);
    for (size_t j = 0; j < rest.size(); ++j) {
        if (rest[j] == 0) continue;
        std::vector<long> next = rest;
        --next[j];
        acc += correlator(MultiIndex(next));
    }
    // the t_0^2 term of the m = -1 constraint: <tau_0^3>_0
    if (*g == 0 && rest.size() == 2 && rest[0] == 0 && rest[1] == 0) acc += 1;
    return acc;
}

Rational VirasoroOracle::dilaton_reduce(const MultiIndex& d) {
    auto g = d.genus();
    if (!g) return Rational(0);
    if (d.n() < 2) throw std::invalid_argument("dilaton_reduce: need n >= 2");
    std::vector<long> rest = d.ds();
    auto it = std::find(rest.begin(), rest.end(), 1L);
    if (it == rest.end()) throw std::invalid_argument("dilaton_reduce: no exponent equal to 1");
    rest.erase(it);
    long factor = 2 * *g - 2 + static_cast<long>(rest.size());
    if (factor <= 0) throw std::invalid_argument("dilaton_reduce: removal leaves an unstable index set");
    return Rational(factor) * correlator(MultiIndex(rest));
}

Rational VirasoroOracle::eval(long g, const std::vector<long>& ds) {
    int n = static_cast<int>(ds.size());
    if (g < 0 || 2 * g - 2 + n <= 0) return Rational(0);
    if (sum_of(ds) != 3 * g - 3 + n) return Rational(0);
    CorrelatorKey key{g, ds};
    {
        std::shared_lock lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    if (store_) {
        if (auto v = store_->get(Producer::virasoro, key, ValueKind::correlator)) {
            std::unique_lock lock(memo_mutex_);
            memo_.emplace(key, *v);
            return *v;
        }
    }

    Rational acc(0);
    if (all_zero(ds)) {
        acc = 1;  // <tau_0^3>_0; dimension check above admits no other all-zero key
    } else {
        long m = ds[0] - 1;  // pivot on the largest exponent
        std::vector<long> rest(ds.begin() + 1, ds.end());
        int nr = static_cast<int>(rest.size());
        for (int j = 0; j < nr; ++j) {
            std::vector<long> next = rest;
            next.erase(next.begin() + j);
            next.push_back(rest[j] + m);
            acc += ratio(double_factorial(2 * rest[j] + 2 * m + 1),
                         double_factorial(2 * rest[j] - 1)) *
                   eval(g, sorted_desc(next));
        }
        for (long t = 0; t < m; ++t) {
            Rational c = ratio(double_factorial(2 * t + 1) * double_factorial(2 * m - 2 * t - 1), 2);
            if (g >= 1) {
                std::vector<long> joined = rest;
                joined.push_back(t);
                joined.push_back(m - 1 - t);
                acc += c * eval(g - 1, sorted_desc(joined));
            }
            for (unsigned mask = 0; mask < (1u << nr); ++mask) {
                std::vector<long> left, right;
                for (int i = 0; i < nr; ++i)
                    (mask >> i & 1 ? left : right).push_back(rest[i]);
                left.push_back(t);
                right.push_back(m - 1 - t);
                long sl = sum_of(left), sr = sum_of(right);
                for (long g1 = 0; g1 <= g; ++g1) {
                    long g2 = g - g1;
                    // both factors must be stable and dimension-consistent;
                    // checking cheaply here also guarantees termination
                    int nl = static_cast<int>(left.size()), nrr = static_cast<int>(right.size());
                    if (2 * g1 - 2 + nl <= 0 || 2 * g2 - 2 + nrr <= 0) continue;
                    if (sl != 3 * g1 - 3 + nl || sr != 3 * g2 - 3 + nrr) continue;
                    acc += c * eval(g1, sorted_desc(left)) * eval(g2, sorted_desc(right));
                }
            }
        }
        if (m == 0 && nr == 0 && g == 1) acc += make_rational(1, 8);
        acc /= Rational(double_factorial(2 * m + 3));
    }

    {
        std::unique_lock lock(memo_mutex_);
        memo_.emplace(key, acc);
    }
    if (store_) store_->put(Producer::virasoro, key, ValueKind::correlator, acc);
    return acc;
}

}  // namespace psimr
