#include "psimr/mr_engine.hpp"

#include <atomic>
#include <cassert>
#include <stdexcept>
#include <thread>

namespace psimr {

MultiIndex::MultiIndex(std::vector<long> ds) : ds_(std::move(ds)) {
    if (ds_.empty()) throw std::invalid_argument("MultiIndex: empty exponent tuple");
    for (long d : ds_) {
        if (d < 0) throw std::invalid_argument("MultiIndex: negative exponent");
        sum_ += d;
    }
}

std::optional<long> MultiIndex::genus() const {
    long t = sum_ - n() + 3;
    if (t % 3 != 0 || t < 0) return std::nullopt;
    return t / 3;
}

bool MultiIndex::stable() const {
    auto g = genus();
    return g && 2 * *g - 2 + n() > 0;
}

long j_exponent(const PermutationRecord& sigma, int q, long j) {
    int n = sigma.n();
    if (q < 1 || q > n) throw std::invalid_argument("j_exponent: q out of range");
    int here = sigma.sigma[q - 1];
    int next = sigma.sigma[q % n];  // sigma(n+1) = sigma(1)
    return here < next ? -j - 1 : j;
}

long k_value(const MultiIndex& d, const PermutationRecord& sigma, int q, const LatticePoint& j) {
    int n = sigma.n();
    if (q < 1 || q > n) throw std::invalid_argument("k_value: q out of range");
    int prev = q == 1 ? n : q - 1;  // j_0 = j_n, J_{sigma,0} = J_{sigma,n}
    return d.ds()[sigma.sigma[q - 1] - 1] + j_exponent(sigma, q, j[q - 1]) -
           j_exponent(sigma, prev, j[prev - 1]);
}

namespace {

// DFS over lattice points with per-level pruning. Levels pick j_1..j_{n-1}
// with j_n fixed by the outer loop; choosing j_q decides K_q, and the last
// level also decides K_n. Prunes:
//   * K_q >= -1 (any k <= -2 kills the coefficient),
//   * prefix-sum bound: sum of decided K's <= sum(d) + (number undecided),
//   * residue alternation: consecutive non-1 residues (mod 3) must differ.
class LatticeSum {
public:
    LatticeSum(const std::vector<long>& d, const PermutationRecord& sigma, long g, long slack)
        : n_(sigma.n()), dsum_(0), bound_(3 * g + 2 * n_ - 4 + slack) {
        asc_.resize(n_ + 1);
        dsig_.resize(n_ + 1);
        for (int q = 1; q <= n_; ++q) {
            int here = sigma.sigma[q - 1];
            int next = sigma.sigma[q % n_];
            asc_[q] = here < next;
            dsig_[q] = d[here - 1];
            dsum_ += d[here - 1];
        }
        long kmax = dsum_ + n_ - 1;
        btab_.reserve(kmax + 2);
        for (long k = -1; k <= kmax; ++k) btab_.push_back(b_coeff(k));
        js_.assign(n_ + 1, 0);
        prefix_.assign(n_ + 1, Rational(1));
        sumk_.assign(n_ + 1, 0);
        total_ = Rational(0);
    }

    Rational run() {
        if (bound_ < 0) return total_;
        for (long jn = 0; jn <= bound_; ++jn) {
            js_[n_] = jn;
            descend(1);
        }
        return total_;
    }

private:
    long jcoord(int q) const { return js_[q == 0 ? n_ : q]; }

    long jterm(int q, long j) const { return asc_[q == 0 ? n_ : q] ? -j - 1 : j; }

    // Applies K at position q to the running state; returns false if pruned.
    bool push_k(int q, long k, int& nonone_added) {
        if (k < -1) return false;
        long remaining = n_ - q;
        if (sumk_[q - 1] + k > dsum_ + remaining) return false;
        int r = static_cast<int>(((k % 3) + 3) % 3);
        if (r != 1) {
            if (!nonones_.empty() && nonones_.back().second == r) return false;
            nonones_.emplace_back(q, r);
            ++nonone_added;
        }
        sumk_[q] = sumk_[q - 1] + k;
        mpq_mul(prefix_[q].get_mpq_t(), prefix_[q - 1].get_mpq_t(), btab_[k + 1].get_mpq_t());
        return true;
    }

    void leaf() {
        if (nonones_.empty()) {
            if (n_ % 2 == 0) {  // P1; odd n is traceless
                mpq_add(total_.get_mpq_t(), total_.get_mpq_t(), prefix_[n_].get_mpq_t());
                mpq_add(total_.get_mpq_t(), total_.get_mpq_t(), prefix_[n_].get_mpq_t());
            }
            return;
        }
        int first = nonones_.front().second;
        int last = nonones_.back().second;
        if (first == last) return;  // traceless classes
        long e = 0;
        if (first == 0) {  // P2: gaps (i_0,i_1),(i_2,i_3),... with i_0 = 0, i_{2s+1} = n+1
            long prev = 0;
            for (size_t t = 0; t < nonones_.size(); t += 2) {
                e += nonones_[t].first - prev - 1;
                prev = t + 1 < nonones_.size() ? nonones_[t + 1].first : 0;
            }
            e += (n_ + 1) - nonones_.back().first - 1;
        } else {  // P3: gaps (i_1,i_2),(i_3,i_4),...
            for (size_t t = 0; t + 1 < nonones_.size(); t += 2)
                e += nonones_[t + 1].first - nonones_[t].first - 1;
        }
        if (e % 2 == 0)
            mpq_add(total_.get_mpq_t(), total_.get_mpq_t(), prefix_[n_].get_mpq_t());
        else
            mpq_sub(total_.get_mpq_t(), total_.get_mpq_t(), prefix_[n_].get_mpq_t());
    }

    void descend(int q) {
        // Feasible j_q range from K_q >= -1 and the prefix-sum bound.
        long jprev = jterm(q - 1, jcoord(q - 1));
        long kcap = dsum_ + (n_ - q) - sumk_[q - 1];
        long lo = 0, hi = bound_;
        if (asc_[q]) {
            long c = dsig_[q] - 1 - jprev;  // K_q = c - j_q
            hi = std::min(hi, c + 1);
            lo = std::max(lo, c - kcap);
        } else {
            long c = dsig_[q] - jprev;  // K_q = c + j_q
            lo = std::max(lo, -1 - c);
            hi = std::min(hi, kcap - c);
        }
        for (long j = lo; j <= hi; ++j) {
            js_[q] = j;
            long k = dsig_[q] + jterm(q, j) - jprev;
            int added = 0;
            if (!push_k(q, k, added)) {
                pop(added);
                continue;
            }
            if (q == n_ - 1) {
                long kn = dsig_[n_] + jterm(n_, js_[n_]) - jterm(n_ - 1, j);
                int added2 = 0;
                if (push_k(n_, kn, added2)) {
                    assert(sumk_[n_] == dsum_);
                    leaf();
                }
                pop(added2);
            } else {
                descend(q + 1);
            }
            pop(added);
        }
    }

    void pop(int count) {
        for (int i = 0; i < count; ++i) nonones_.pop_back();
    }

    int n_;
    long dsum_, bound_;
    std::vector<bool> asc_;          // asc_[q], 1-based
    std::vector<long> dsig_;         // d_{sigma(q)}, 1-based
    std::vector<Rational> btab_;     // btab_[k+1] = b_k
    std::vector<long> js_;           // js_[q], 1-based; js_[n] fixed per outer iteration
    std::vector<Rational> prefix_;   // prefix_[q] = prod b_{K_1..K_q}
    std::vector<long> sumk_;         // prefix sums of K
    std::vector<std::pair<int, int>> nonones_;  // (position, residue) of non-1 residues
    Rational total_;
};

Rational gamma_prefactor(long g, int n, int m) {
    Rational pre = ratio(pow_integer(24, g) * factorial(g), double_factorial(6 * g - 5 + 2 * n));
    return (m % 2 == 0) ? -pre : pre;  // (-1)^{m+1}
}

}  // namespace

Engine::Engine(CorrelatorStore* store, EngineOptions opts) : store_(store), opts_(opts) {
    if (opts_.jobs < 1) throw std::invalid_argument("EngineOptions: jobs must be >= 1");
}

Rational Engine::gamma_term(const MultiIndex& d, const PermutationRecord& sigma) const {
    if (d.n() != sigma.n()) throw std::invalid_argument("gamma_term: size mismatch");
    auto g = d.genus();
    if (!g) return Rational(0);  // dimension vanishing
    LatticeSum sum(d.ds(), sigma, *g, opts_.lattice_slack);
    return gamma_prefactor(*g, d.n(), sigma.m) * sum.run();
}

Rational Engine::evaluate(const std::vector<long>& ds, long g) const {
    int n = static_cast<int>(ds.size());
    if (n == 1) return Rational(1);  // G_{3g-2}(g) = 1
    auto perms = enumerate_permutations(n);
    std::vector<Rational> parts(perms.size());
    // explicit return type: a deduced one would be a gmpxx expression
    // template referencing dead temporaries
    auto worker = [&](const PermutationRecord& sigma) -> Rational {
        LatticeSum sum(ds, sigma, g, opts_.lattice_slack);
        return gamma_prefactor(g, n, sigma.m) * sum.run();
    };
    if (opts_.jobs <= 1 || perms.size() <= 1) {
        for (size_t i = 0; i < perms.size(); ++i) parts[i] = worker(perms[i]);
    } else {
        std::atomic<size_t> next{0};
        auto thread_fn = [&]() {
            for (size_t i = next.fetch_add(1); i < perms.size(); i = next.fetch_add(1))
                parts[i] = worker(perms[i]);
        };
        std::vector<std::thread> pool;
        int count = std::min<int>(opts_.jobs, static_cast<int>(perms.size()));
        pool.reserve(count);
        for (int t = 0; t < count; ++t) pool.emplace_back(thread_fn);
        for (auto& th : pool) th.join();
    }
    Rational total(0);
    for (const auto& p : parts) total += p;  // fixed order: bit-identical for any job count
    return total;
}

Rational Engine::evaluate_direct(const MultiIndex& d) const {
    auto g = d.genus();
    if (!g) return Rational(0);
    if (!d.stable()) throw std::domain_error("evaluate_direct: unstable (g,n)");
    return evaluate(d.ds(), *g);
}

Rational Engine::normalized_g(const MultiIndex& d) const {
    auto g = d.genus();
    if (!g) return Rational(0);
    if (!d.stable()) throw std::domain_error("normalized_g: unstable (g,n)");
    CorrelatorKey key = CorrelatorKey::canonical(*g, d.ds());
    {
        std::shared_lock lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    if (store_) {
        if (auto v = store_->get(Producer::mr, key, ValueKind::normalized)) {
            std::unique_lock lock(memo_mutex_);
            memo_.emplace(key, *v);
            return *v;
        }
    }
    Rational value = evaluate(key.ds, *g);
    {
        std::unique_lock lock(memo_mutex_);
        memo_.emplace(key, value);
    }
    if (store_) store_->put(Producer::mr, key, ValueKind::normalized, value);
    return value;
}

Rational Engine::correlator(const MultiIndex& d) const {
    auto g = d.genus();
    if (!g) return Rational(0);
    Rational norm = normalized_g(d);
    Integer denom = pow_integer(24, *g) * factorial(*g);
    for (long dj : d.ds()) denom *= double_factorial(2 * dj + 1);
    Rational value = norm * ratio(double_factorial(6 * *g + 2 * d.n() - 5), denom);
    if (store_)
        store_->put(Producer::mr, CorrelatorKey::canonical(*g, d.ds()), ValueKind::correlator, value);
    return value;
}

Rational kappa_diagnostic(const ACoeffKey& ks, long g) {
    int n = static_cast<int>(ks.size());
    if (n < 2) throw std::domain_error("kappa_diagnostic: need n >= 2");
    if (g < 0) throw std::domain_error("kappa_diagnostic: need g >= 0");
    long sum = 0;
    for (long k : ks) sum += k;
    if (sum != 3 * g - 3 + n)
        throw std::domain_error("kappa_diagnostic: sum(k) != 3g-3+n");
    long half = n / 2, threehalf = (3 * n) / 2;
    Rational pre = ratio(pow_integer(24, g + half - 1) * factorial(g + half - 1),
                         double_factorial(6 * g + 2 * threehalf - 7));
    return pre * a_coeff_pattern(ks);
}

}  // namespace psimr
