#include "psimr/permutations.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace psimr {

PermutationRecord annotate_permutation(std::vector<int> sigma) {
    int n = static_cast<int>(sigma.size());
    if (n < 2 || sigma[0] != 1) throw std::invalid_argument("annotate_permutation: need n >= 2 and sigma(1) = 1");
    PermutationRecord rec;
    rec.sigma = std::move(sigma);
    const auto& s = rec.sigma;
    auto at = [&](int q) { return s[((q - 1) % n + n) % n]; };  // 1-based, cyclic
    for (int q = 1; q <= n; ++q)
        if (at(q + 1) < at(q)) ++rec.m;
    std::vector<int> valleys, peaks;
    for (int q = 1; q <= n; ++q) {
        if (at(q - 1) > at(q) && at(q) < at(q + 1)) valleys.push_back(q);
        if (at(q - 1) < at(q) && at(q) > at(q + 1)) peaks.push_back(q);
    }
    rec.l = static_cast<int>(peaks.size());
    // valleys and peaks interleave starting from t_1 = 1 (position of the
    // global minimum, always a valley)
    for (int u = 0; u < rec.l; ++u) {
        rec.runs.push_back(valleys[u]);
        rec.runs.push_back(peaks[u]);
    }
    return rec;
}

std::vector<PermutationRecord> enumerate_permutations(int n) {
    if (n < 2) throw std::invalid_argument("enumerate_permutations: need n >= 2");
    std::vector<int> tail(n - 1);
    std::iota(tail.begin(), tail.end(), 2);
    std::vector<PermutationRecord> out;
    do {
        std::vector<int> sigma;
        sigma.reserve(n);
        sigma.push_back(1);
        sigma.insert(sigma.end(), tail.begin(), tail.end());
        out.push_back(annotate_permutation(std::move(sigma)));
    } while (std::next_permutation(tail.begin(), tail.end()));
    return out;
}

}  // namespace psimr
