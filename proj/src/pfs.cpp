#include "strsan/pfs.hpp"

#include <numeric>

#include "strsan/suffix_array.hpp"

namespace strsan {

std::vector<Sequence> split_blocks(const SanitizedString& X) {
    std::vector<Sequence> out;
    for (auto b : X.blocks()) out.emplace_back(b.begin(), b.end());
    return out;
}

std::vector<RankPair> rank_blocks(const std::vector<Sequence>& blocks, std::size_t ell) {
    std::vector<Kmer> grams;
    grams.reserve(2 * blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& blk = blocks[b];
        if (blk.size() <= ell)
            throw BlockTooShort("block " + std::to_string(b) + " has length " +
                                std::to_string(blk.size()) + ", needs more than " + std::to_string(ell));
        grams.emplace_back(blk.begin(), blk.begin() + static_cast<std::ptrdiff_t>(ell));
        grams.emplace_back(blk.end() - static_cast<std::ptrdiff_t>(ell), blk.end());
    }
    std::vector<Kmer> sorted = grams;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    auto rank_of = [&](const Kmer& g) {
        return static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), g) - sorted.begin());
    };
    std::vector<RankPair> out;
    out.reserve(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b)
        out.push_back({b, rank_of(grams[2 * b]), rank_of(grams[2 * b + 1])});
    return out;
}

std::size_t FoSsmResult::blocks() const {
    std::size_t total = 0;
    for (const auto& p : paths) total += p.size();
    return total;
}

std::vector<Junction> FoSsmResult::junctions() const {
    std::vector<Junction> out;
    for (std::size_t p = 0; p < paths.size(); ++p) {
        if (p > 0) out.push_back(Junction::Concat);
        for (std::size_t i = 1; i < paths[p].size(); ++i) out.push_back(Junction::Merge);
    }
    return out;
}

std::vector<std::size_t> FoSsmResult::order() const {
    std::vector<std::size_t> out;
    for (const auto& p : paths) out.insert(out.end(), p.begin(), p.end());
    return out;
}

namespace {

constexpr std::int64_t kNoEdge = -1;

class PathDecomposer {
public:
    explicit PathDecomposer(const std::vector<RankPair>& pairs) : pairs_(pairs) {
        std::uint32_t top = 0;
        for (const auto& p : pairs) top = std::max({top, p.prefix_rank, p.suffix_rank});
        nodes_ = pairs.empty() ? 0 : static_cast<std::size_t>(top) + 1;
        out_.assign(nodes_, {});
        for (std::size_t e = 0; e < pairs.size(); ++e) out_[pairs[e].prefix_rank].push_back(e);
        for (auto& list : out_)
            std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
                if (pairs_[a].suffix_rank != pairs_[b].suffix_rank)
                    return pairs_[a].suffix_rank < pairs_[b].suffix_rank;
                return pairs_[a].block_id < pairs_[b].block_id;
            });
        taken_.assign(nodes_, 0);
        owner_.assign(pairs.size(), kNoEdge);
    }

    std::vector<std::vector<std::size_t>> run() {
        peel_unbalanced();
        splice_cycles();
        cover_remaining();
        std::vector<std::vector<std::size_t>> out;
        out.reserve(paths_.size());
        for (const auto& path : paths_) {
            std::vector<std::size_t> ids;
            ids.reserve(path.size());
            for (std::size_t e : path) ids.push_back(pairs_[e].block_id);
            out.push_back(std::move(ids));
        }
        return out;
    }

private:
    // Walks from every node with surplus out-degree until stuck.
    void peel_unbalanced() {
        std::vector<std::int64_t> surplus(nodes_, 0);
        for (const auto& p : pairs_) {
            ++surplus[p.prefix_rank];
            --surplus[p.suffix_rank];
        }
        for (std::size_t v = 0; v < nodes_; ++v) {
            while (surplus[v] > 0) {
                std::vector<std::size_t> path;
                std::size_t cur = v;
                const auto pid = static_cast<std::int64_t>(paths_.size());
                while (taken_[cur] < out_[cur].size()) {
                    std::size_t e = out_[cur][taken_[cur]++];
                    owner_[e] = pid;
                    path.push_back(e);
                    cur = pairs_[e].suffix_rank;
                }
                --surplus[v];
                ++surplus[cur];
                paths_.push_back(std::move(path));
            }
        }
        // Everything after taken_[v] is still unused and forms balanced components.
        rest_ = taken_;
        own_.assign(nodes_, 0);
    }

    std::int64_t next_edge(std::size_t v, std::int64_t pid) {
        if (rest_[v] < out_[v].size()) return static_cast<std::int64_t>(out_[v][rest_[v]++]);
        if (pid != kNoEdge && own_[v] < taken_[v] && owner_[out_[v][own_[v]]] == pid)
            return static_cast<std::int64_t>(out_[v][own_[v]++]);
        return kNoEdge;
    }

    std::vector<std::size_t> trail_from(std::size_t start, std::int64_t pid) {
        std::vector<std::pair<std::size_t, std::int64_t>> stack{{start, kNoEdge}};
        std::vector<std::size_t> trail;
        while (!stack.empty()) {
            auto [v, via] = stack.back();
            std::int64_t e = next_edge(v, pid);
            if (e != kNoEdge) {
                stack.emplace_back(pairs_[static_cast<std::size_t>(e)].suffix_rank, e);
            } else {
                if (via != kNoEdge) trail.push_back(static_cast<std::size_t>(via));
                stack.pop_back();
            }
        }
        std::reverse(trail.begin(), trail.end());
        return trail;
    }

    // Rebuilds each peeled path as a trail that absorbs the unused cycles it touches.
    void splice_cycles() {
        for (std::size_t p = 0; p < paths_.size(); ++p) {
            std::size_t start = pairs_[paths_[p].front()].prefix_rank;
            paths_[p] = trail_from(start, static_cast<std::int64_t>(p));
        }
    }

    void cover_remaining() {
        for (std::size_t v = 0; v < nodes_; ++v)
            while (rest_[v] < out_[v].size()) paths_.push_back(trail_from(v, kNoEdge));
    }

    const std::vector<RankPair>& pairs_;
    std::size_t nodes_ = 0;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::size_t> taken_, rest_, own_;
    std::vector<std::int64_t> owner_;
    std::vector<std::vector<std::size_t>> paths_;
};

}  // namespace

FoSsmResult fo_ssm(const std::vector<RankPair>& pairs) {
    PathDecomposer d(pairs);
    return FoSsmResult{d.run()};
}

SanitizedString assemble(const std::vector<Sequence>& blocks, const FoSsmResult& order, std::size_t ell) {
    Sequence out;
    for (std::size_t p = 0; p < order.paths.size(); ++p) {
        if (p > 0) out.push_back(kSeparator);
        for (std::size_t i = 0; i < order.paths[p].size(); ++i) {
            const auto& blk = blocks.at(order.paths[p][i]);
            auto from = blk.begin() + static_cast<std::ptrdiff_t>(i == 0 ? 0 : ell);
            out.insert(out.end(), from, blk.end());
        }
    }
    return SanitizedString{std::move(out)};
}

SanitizedString pfs_sanitize(const SanitizationInstance& inst) {
    const std::size_t ell = inst.k - 1;
    auto sa = suffix_array(inst.W);
    auto lcp = lcp_array(inst.W, sa);
    GramClasses classes = gram_classes(inst.W, sa, lcp, ell);
    CompactTfs compact = tfs_compact(inst, classes);

    // Blocks as runs of intervals between separators.
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // [first, last] segment index
    for (std::size_t i = 0, start = 0; i <= compact.segments.size(); ++i) {
        if (i == compact.segments.size() || compact.segments[i].is_separator()) {
            if (i > start) spans.emplace_back(start, i - 1);
            start = i + 1;
        }
    }
    if (spans.empty()) return SanitizedString{};

    const auto& segs = compact.segments;
    std::vector<std::uint32_t> pre(spans.size()), suf(spans.size());
    for (std::size_t b = 0; b < spans.size(); ++b) {
        if (ell == 0) continue;
        pre[b] = classes.id[segs[spans[b].first].begin];
        suf[b] = classes.id[segs[spans[b].second].end + 1 - ell];
    }
    std::vector<std::uint32_t> used(pre);
    used.insert(used.end(), suf.begin(), suf.end());
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    auto dense = [&](std::uint32_t id) {
        return static_cast<std::uint32_t>(std::lower_bound(used.begin(), used.end(), id) - used.begin());
    };
    std::vector<RankPair> pairs(spans.size());
    for (std::size_t b = 0; b < spans.size(); ++b) pairs[b] = {b, dense(pre[b]), dense(suf[b])};

    FoSsmResult order = fo_ssm(pairs);

    Sequence out;
    out.reserve(compact.length());
    const Sequence& W = inst.W;
    for (std::size_t p = 0; p < order.paths.size(); ++p) {
        if (p > 0) out.push_back(kSeparator);
        for (std::size_t i = 0; i < order.paths[p].size(); ++i) {
            auto [first, last] = spans[order.paths[p][i]];
            for (std::size_t s = first; s <= last; ++s) {
                std::size_t from = segs[s].begin + (s == first && i > 0 ? ell : 0);
                out.insert(out.end(), W.begin() + static_cast<std::ptrdiff_t>(from),
                           W.begin() + static_cast<std::ptrdiff_t>(segs[s].end) + 1);
            }
        }
    }
    return SanitizedString{std::move(out)};
}

}  // namespace strsan
