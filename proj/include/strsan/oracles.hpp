#pragma once

#include <cstdint>
#include <vector>

#include "strsan/core.hpp"
#include "strsan/mcsr.hpp"
#include "strsan/pfs.hpp"

namespace strsan {

/// Limits for exhaustive searches; exceeding one raises BudgetExceeded.
struct OracleBudget {
    std::size_t max_n = 10;
    std::size_t max_sigma = 2;
    std::size_t max_len = 24;
    std::uint64_t max_candidates = 50'000'000;
};

struct OracleWitness {
    std::size_t value = 0;  // length or edit distance
    Sequence witness;
};

/// Shortest string with no sensitive pattern, the same non-sensitive order and
/// the same non-sensitive frequencies; searched in length-lexicographic order.
OracleWitness oracle_min_tfs(const SanitizationInstance& inst, const OracleBudget& budget = {});

/// Smallest edit distance from W over strings with the same three properties.
OracleWitness oracle_min_etfs(const SanitizationInstance& inst, const OracleBudget& budget = {});

/// Exhaustive product enumeration.
MckSelection oracle_mck(const MckInstance& inst, const OracleBudget& budget = {});

/// Shortest rank string over all block permutations; N at most 7.
std::size_t oracle_fo_ssm(const std::vector<RankPair>& pairs);

}  // namespace strsan
