#pragma once

#include <vector>

namespace psimr {

// A permutation sigma of {1..n} with sigma(1) = 1, annotated with its cyclic
// descent count and its alternating-run structure. Reading sigma cyclically
// (sigma(n+1) = sigma(1)), the sequence splits into l maximal ascending runs
// and l maximal descending runs; runs[] holds the boundaries
// t_1 < t_2 < ... < t_{2l} where odd slots are valleys (t_1 = 1, the global
// minimum) and even slots are peaks.
struct PermutationRecord {
    std::vector<int> sigma;  // sigma[q-1] = sigma(q), values 1..n
    int m = 0;               // card{q : sigma(q+1) < sigma(q)}, cyclic
    std::vector<int> runs;   // t_1 < ... < t_{2l}, 1-based positions
    int l = 0;               // class label: sigma lies in the {2l} class

    int n() const { return static_cast<int>(sigma.size()); }
    bool is_unimodal() const { return l == 1; }
    // For unimodal sigma, the (r, n-r) type: r = peak position - 1.
    int unimodal_r() const { return runs[1] - 1; }
};

PermutationRecord annotate_permutation(std::vector<int> sigma);

// All (n-1)! records with sigma(1) = 1, in lexicographic order of sigma.
std::vector<PermutationRecord> enumerate_permutations(int n);

}  // namespace psimr
