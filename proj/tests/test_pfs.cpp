#include <doctest.h>

#include "strsan/eval.hpp"
#include "strsan/oracles.hpp"
#include "strsan/pfs.hpp"
#include "support/random_instances.hpp"

using namespace strsan;
using namespace strsan::testing;

namespace {

SanitizationInstance running() { return instance("aabaaacbcbbbaabbacaab", 4, {"baaa", "bbaa"}); }

std::vector<Sequence> running_blocks() { return split_blocks(tfs_sanitize(running())); }

}  // namespace

TEST_CASE("blocks of the running example") {
    auto b = running_blocks();
    REQUIRE(b.size() == 3);
    CHECK(str(b[0]) == "aabaa");
    CHECK(str(b[1]) == "aaacbcbbba");
    CHECK(str(b[2]) == "baabbacaab");
    CHECK(split_blocks(SanitizedString{}).empty());
}

TEST_CASE("prefix and suffix ranks of the running example") {
    auto r = rank_blocks(running_blocks(), 3);
    // Sorted grams: aaa < aab < baa < bba.
    REQUIRE(r.size() == 3);
    CHECK(r[0] == RankPair{0, 1, 2});
    CHECK(r[1] == RankPair{1, 0, 3});
    CHECK(r[2] == RankPair{2, 2, 1});
}

TEST_CASE("blocks no longer than the overlap are rejected") {
    CHECK_THROWS_AS(rank_blocks({seq("abc"), seq("ab")}, 2), BlockTooShort);
}

TEST_CASE("path decomposition of the running example") {
    auto pairs = rank_blocks(running_blocks(), 3);
    auto res = fo_ssm(pairs);
    CHECK(res.paths == std::vector<std::vector<std::size_t>>{{1}, {0, 2}});
    CHECK(res.merges() == 1);
    CHECK(res.concats() == 1);
    CHECK(res.induced_length() == 5);
    CHECK(res.junctions() == std::vector<Junction>{Junction::Concat, Junction::Merge});
    CHECK(res.induced_length() == oracle_fo_ssm(pairs));
}

TEST_CASE("assembly of the running example") {
    auto inst = running();
    auto Y = pfs_sanitize(inst);
    CHECK(str(Y) == "aaacbcbbba#aabaabbacaab");
    CHECK(Y.size() == 23);
    CHECK(Y.separators() == 1);
    for (Level l : {Level::C1, Level::Pi1, Level::P2, Level::P3}) CHECK(verify(Y.tokens, inst, l));
    CHECK_FALSE(verify(Y.tokens, inst, Level::P1));
}

TEST_CASE("empty and single block inputs") {
    auto empty = instance("aaaaaab", 4, {"aaaa", "aaab"});
    CHECK(pfs_sanitize(empty).size() == 0);
    CHECK(fo_ssm({}).paths.empty());
    auto single = instance("abcab", 3, {});
    CHECK(str(pfs_sanitize(single)) == "abcab");
}

TEST_CASE("cycles of blocks are chained into one path") {
    // Pairs (0,1),(1,0),(0,1): an Eulerian trail uses all of them.
    std::vector<RankPair> pairs{{0, 0, 1}, {1, 1, 0}, {2, 0, 1}};
    auto res = fo_ssm(pairs);
    CHECK(res.paths.size() == 1);
    CHECK(res.induced_length() == 4);
    CHECK(oracle_fo_ssm(pairs) == 4);
}

TEST_CASE("decomposition is optimal on random pair multisets") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 400; ++it) {
        std::size_t N = 1 + rng() % 7, r = 1 + rng() % 4;
        std::vector<RankPair> pairs;
        for (std::size_t i = 0; i < N; ++i)
            pairs.push_back({i, static_cast<std::uint32_t>(rng() % r), static_cast<std::uint32_t>(rng() % r)});
        auto res = fo_ssm(pairs);
        auto order = res.order();
        std::sort(order.begin(), order.end());
        for (std::size_t i = 0; i < N; ++i) REQUIRE(order[i] == i);
        for (const auto& path : res.paths)
            for (std::size_t i = 1; i < path.size(); ++i)
                CHECK(pairs[path[i - 1]].suffix_rank == pairs[path[i]].prefix_rank);
        CHECK(res.induced_length() == oracle_fo_ssm(pairs));
    }
}

TEST_CASE("fast path equals the staged construction and keeps the properties") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 400; ++it) {
        std::size_t k = 2 + rng() % 4, n = k + 1 + rng() % 80, sigma = 2 + rng() % 3;
        auto inst = random_instance(rng, n, sigma, k, 0.05 + 0.1 * (it % 5));
        auto X = tfs_sanitize(inst);
        auto blocks = split_blocks(X);
        auto staged = assemble(blocks, fo_ssm(rank_blocks(blocks, k - 1)), k - 1);
        auto Y = pfs_sanitize(inst);
        REQUIRE(Y == staged);
        CHECK(Y.size() <= X.size());
        for (Level l : {Level::C1, Level::Pi1, Level::P2, Level::P3, Level::P4}) {
            auto v = verify(Y.tokens, inst, l);
            INFO(level_name(l), " ", v.message, " W=", str(inst.W), " Y=", str(Y));
            CHECK(v.ok);
        }
    }
}
