#pragma once

#include <cstdint>
#include <vector>

#include "strsan/core.hpp"
#include "strsan/tfs.hpp"

namespace strsan {

std::vector<Sequence> split_blocks(const SanitizedString& X);

struct RankPair {
    std::size_t block_id = 0;
    std::uint32_t prefix_rank = 0;  // 0-based rank among the distinct grams
    std::uint32_t suffix_rank = 0;
    bool operator==(const RankPair&) const = default;
};

/// Ranks the length-`ell` prefix and suffix of every block. Throws
/// BlockTooShort if a block is not longer than `ell`.
std::vector<RankPair> rank_blocks(const std::vector<Sequence>& blocks, std::size_t ell);

enum class Junction : std::uint8_t { Merge, Concat };

/// Block order as a list of paths. Inside a path every junction is a merge;
/// consecutive paths are joined by a separator.
struct FoSsmResult {
    std::vector<std::vector<std::size_t>> paths;

    std::size_t blocks() const;
    std::size_t merges() const { return blocks() - paths.size(); }
    std::size_t concats() const { return paths.empty() ? 0 : paths.size() - 1; }
    std::vector<Junction> junctions() const;
    std::vector<std::size_t> order() const;
    /// Length of the shortest string over ranks with each pair as a distinct substring.
    std::size_t induced_length() const { return 2 * blocks() - merges(); }
};

FoSsmResult fo_ssm(const std::vector<RankPair>& pairs);

/// Spells the blocks in the given order, merging on (ell)-overlaps.
SanitizedString assemble(const std::vector<Sequence>& blocks, const FoSsmResult& order, std::size_t ell);

SanitizedString pfs_sanitize(const SanitizationInstance& inst);

}  // namespace strsan
