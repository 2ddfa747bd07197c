#include "strsan/oracles.hpp"

#include <limits>
#include <numeric>

#include "strsan/eval.hpp"

namespace strsan {

namespace {

void check_size(const SanitizationInstance& inst, const OracleBudget& budget) {
    if (inst.n() > budget.max_n) throw BudgetExceeded("string longer than the oracle budget");
    if (inst.sigma > budget.max_sigma) throw BudgetExceeded("alphabet larger than the oracle budget");
}

// Depth-first enumeration of all strings of one length over letters then "#",
// pruned to prefixes whose windows follow the non-sensitive order of W.
class Enumerator {
public:
    Enumerator(const SanitizationInstance& inst, const OracleBudget& budget, std::uint64_t& visited)
        : inst_(inst), budget_(budget), visited_(visited) {}

    template <typename Fn>
    void each(std::size_t length, Fn&& fn) {
        buf_.clear();
        grow(length, 0, 0, fn);
    }

private:
    template <typename Fn>
    void grow(std::size_t length, std::size_t next_window, std::size_t run, Fn& fn) {
        if (++visited_ > budget_.max_candidates) throw BudgetExceeded("oracle candidate budget exhausted");
        const std::size_t remaining = length - buf_.size();
        // Each appended token completes at most one window.
        if (inst_.I.size() - next_window > remaining) return;
        if (remaining == 0) {
            if (next_window != inst_.I.size()) return;
            TokenSpan t(buf_);
            if (verify(t, inst_, Level::C1) && verify(t, inst_, Level::P1) && verify(t, inst_, Level::P2)) fn(t);
            return;
        }
        const std::size_t k = inst_.k;
        for (std::size_t a = 0; a <= inst_.sigma; ++a) {
            const bool sep = a == inst_.sigma;
            buf_.push_back(sep ? kSeparator : static_cast<Token>(a));
            std::size_t nrun = sep ? 0 : run + 1;
            std::size_t nwin = next_window;
            bool ok = true;
            if (nrun >= k) {
                TokenSpan w = TokenSpan(buf_).last(k);
                if (inst_.is_sensitive(w)) {
                    ok = false;
                } else if (nwin < inst_.I.size() &&
                           std::equal(w.begin(), w.end(), inst_.W.begin() + static_cast<std::ptrdiff_t>(inst_.I[nwin]))) {
                    ++nwin;
                } else {
                    ok = false;
                }
            }
            if (ok) grow(length, nwin, nrun, fn);
            buf_.pop_back();
        }
    }

    const SanitizationInstance& inst_;
    const OracleBudget& budget_;
    std::uint64_t& visited_;
    Sequence buf_;
};

}  // namespace

OracleWitness oracle_min_tfs(const SanitizationInstance& inst, const OracleBudget& budget) {
    check_size(inst, budget);
    std::uint64_t visited = 0;
    Enumerator en(inst, budget, visited);
    for (std::size_t len = 0; len <= budget.max_len; ++len) {
        std::optional<OracleWitness> found;
        en.each(len, [&](TokenSpan t) {
            if (!found) found = OracleWitness{len, Sequence(t.begin(), t.end())};
        });
        if (found) return *found;
    }
    throw BudgetExceeded("no valid string within the length budget");
}

OracleWitness oracle_min_etfs(const SanitizationInstance& inst, const OracleBudget& budget) {
    check_size(inst, budget);
    std::uint64_t visited = 0;
    Enumerator en(inst, budget, visited);
    const std::size_t n = inst.n();
    std::optional<OracleWitness> best;
    for (std::size_t len = 0;; ++len) {
        if (best && len > n + best->value) return *best;
        if (len > budget.max_len) throw BudgetExceeded("length budget too small to certify the optimum");
        // Edit distance is at least the length difference.
        if (best && len + best->value < n) continue;
        en.each(len, [&](TokenSpan t) {
            std::size_t d = edit_distance(inst.W, t);
            if (!best || d < best->value) best = OracleWitness{d, Sequence(t.begin(), t.end())};
        });
    }
}

MckSelection oracle_mck(const MckInstance& inst, const OracleBudget& budget) {
    std::uint64_t total = 1;
    for (const auto& cls : inst.classes) {
        if (cls.empty()) throw Infeasible("empty class");
        total *= cls.size();
        if (total > budget.max_candidates) throw BudgetExceeded("too many selections");
    }
    const std::size_t d = inst.classes.size();
    std::vector<std::size_t> idx(d, 0);
    std::optional<MckSelection> best;
    for (std::uint64_t it = 0; it < total; ++it) {
        double cost = 0;
        std::int64_t weight = 0;
        for (std::size_t i = 0; i < d; ++i) {
            cost += inst.classes[i][idx[i]].cost;
            weight += inst.classes[i][idx[i]].weight;
        }
        if (weight <= inst.capacity && (!best || cost < best->cost - 1e-9)) best = MckSelection{idx, cost, weight};
        for (std::size_t i = d; i-- > 0;) {
            if (++idx[i] < inst.classes[i].size()) break;
            idx[i] = 0;
        }
    }
    if (!best) throw Infeasible("no selection fits the capacity");
    return *best;
}

std::size_t oracle_fo_ssm(const std::vector<RankPair>& pairs) {
    const std::size_t n = pairs.size();
    if (n > 7) throw BudgetExceeded("permutation oracle limited to 7 blocks");
    if (n == 0) return 0;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    do {
        std::size_t merges = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (pairs[perm[i - 1]].suffix_rank == pairs[perm[i]].prefix_rank) ++merges;
        best = std::min(best, 2 * n - merges);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace strsan
