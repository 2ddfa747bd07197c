#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "strsan/core.hpp"

namespace strsan {

/// A replacement for one separator: a letter, or nullopt for deletion.
using Choice = std::optional<Token>;

struct CostModel {
    /// Cost of a candidate ghost occurrence starting at `position` of the input.
    std::function<double(std::size_t position, TokenSpan pattern)> ghost;
    /// Weight of putting `choice` at separator `separator` (0-based); nullopt forbids it.
    std::function<std::optional<std::int64_t>(std::size_t separator, Choice choice)> sub;
    std::optional<std::int64_t> theta;  // nullopt: number of separators
    std::uint64_t tau = 1;

    /// Unit ghost cost, unit weight for every choice, capacity = separators.
    static CostModel uniform(std::uint64_t tau);
};

/// Tokens around a separator with the choice in the middle.
struct Context {
    Sequence tokens;
    std::size_t origin = 0;  // input position of tokens[0]
    std::size_t left = 0;    // tokens before the slot
};

/// Positions of the separators of Y.
std::vector<std::size_t> separator_positions(TokenSpan Y);

/// Up to k-1 tokens on each side of separator `separator` (0-based), cut at
/// the text ends and at neighbouring separators.
Context context_of(TokenSpan Y, std::size_t k, std::size_t separator, Choice choice);
Sequence context_string(TokenSpan Y, std::size_t k, std::size_t separator, Choice choice);

struct GhostEstimate {
    std::uint64_t freq_y = 0;
    std::uint64_t max_freq_z = 0;
};

using GhostCandidateSet = KmerMap<GhostEstimate>;

GhostCandidateSet candidate_ghosts(TokenSpan Y, std::size_t k, std::uint64_t tau, std::size_t sigma);

struct MckElement {
    Choice choice;
    double cost = 0;
    std::int64_t weight = 0;
};

struct MckInstance {
    std::vector<std::vector<MckElement>> classes;
    std::int64_t capacity = 0;
};

/// One class per separator, letters in alphabet order followed by deletion.
/// Choices that create a sensitive or implausible window are dropped.
MckInstance build_mck(TokenSpan Y, std::size_t k, std::size_t sigma, const GhostCandidateSet& cands,
                      const CostModel& cm, const KmerSet& sensitive, const KmerSet* implausible);

struct MckSelection {
    std::vector<std::size_t> picks;  // element index per class
    double cost = 0;
    std::int64_t weight = 0;
};

/// Orders co-optimal elements during reconstruction. Classes are visited in
/// order; score(i, e) is queried for every element of class i that keeps the
/// optimum, the lowest score wins (ties to the smaller index), and commit(i, e)
/// reports the pick.
struct MckTieBreak {
    virtual ~MckTieBreak() = default;
    virtual double score(std::size_t cls, std::size_t elem) = 0;
    virtual void commit(std::size_t cls, std::size_t elem) = 0;
};

/// Exact multiple-choice knapsack by dynamic programming over capacity.
/// Without a tie-break the smallest co-optimal element index is taken.
MckSelection solve_mck(const MckInstance& inst, MckTieBreak* tie = nullptr);

/// Normalized standard score of U against W, by direct scanning.
double z_score(TokenSpan W, TokenSpan U);

/// Indexed variant for repeated queries with |U| = k.
class ZScorer {
public:
    ZScorer(TokenSpan W, std::size_t k);
    double operator()(TokenSpan U) const;
    std::size_t k() const noexcept { return k_; }

private:
    std::size_t k_;
    KmerIndex full_, head_, middle_;
};

/// Length-k patterns U with z(U) < rho. Requires k > 2 and rho <= 0.
KmerSet implausible_set(TokenSpan W, std::size_t k, std::size_t sigma, double rho);

struct ReplacementSite {
    std::size_t position = 0;  // letter position in Z, or first position after a deletion
    bool deletion = false;
};

struct McsrResult {
    Sequence Z;
    std::vector<Choice> choices;          // per separator
    std::vector<ReplacementSite> sites;   // per separator
    double estimated_cost = 0;
    std::int64_t weight = 0;
    std::int64_t capacity = 0;
    std::size_t resolves = 0;             // extra solver rounds after validation
};

/// Windows of Z touching a replacement site.
template <typename Fn>
void for_each_site_window(TokenSpan Z, std::size_t k, const ReplacementSite& site, Fn&& fn) {
    // A deletion joins Z[pos-1] and Z[pos]; a letter occupies Z[pos].
    if (Z.size() < k || (site.deletion && site.position == 0)) return;
    const std::size_t last = site.deletion ? site.position - 1 : site.position;
    for (std::size_t s = site.position + 1 >= k ? site.position + 1 - k : 0; s <= last && s + k <= Z.size(); ++s)
        fn(s);
}

McsrResult mcsr_sanitize(TokenSpan Y, const SanitizationInstance& inst, const CostModel& cm,
                         const KmerSet* implausible);

}  // namespace strsan
