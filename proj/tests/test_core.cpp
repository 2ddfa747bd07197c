#include <doctest.h>

#include "strsan/core.hpp"
#include "support/random_instances.hpp"

using namespace strsan;
using namespace strsan::testing;

TEST_CASE("sensitive occurrences of the running example") {
    auto inst = instance("aabaaacbcbbbaabbacaab", 4, {"baaa", "bbaa"});
    CHECK(inst.n() == 21);
    CHECK(inst.sigma == 3);
    CHECK(inst.S == std::vector<std::size_t>{2, 10});
    CHECK(inst.I.size() == 16);
    CHECK(inst.absent.empty());
    CHECK(inst.is_sensitive(seq("baaa")));
    CHECK_FALSE(inst.is_sensitive(seq("aaba")));
    // The tail positions inherit the flag of the last window.
    CHECK(inst.C[17] == 0);
    CHECK(inst.C[18] == 0);
}

TEST_CASE("positions are closed under pattern equality") {
    auto inst = build_instance_from_positions(seq("baaabbbaba"), 4, {1, 3, 5});
    CHECK(inst.S == std::vector<std::size_t>{1, 3, 5});
    CHECK(inst.I == std::vector<std::size_t>{0, 2, 4, 6});

    auto rep = build_instance_from_positions(seq("abababa"), 3, {0});
    CHECK(rep.S == std::vector<std::size_t>{0, 2, 4});
}

TEST_CASE("tail rule copies the last window flag") {
    auto inst = instance("aabb", 3, {"abb"});
    CHECK(inst.C == std::vector<std::uint8_t>{0, 1, 1, 1});
}

TEST_CASE("patterns absent from W stay forbidden") {
    auto inst = instance("aabab", 3, {"bbb", "aba"});
    CHECK(inst.absent == std::vector<Kmer>{seq("bbb")});
    CHECK(inst.is_sensitive(seq("bbb")));
    CHECK(inst.S == std::vector<std::size_t>{1});
}

TEST_CASE("instance construction errors") {
    CHECK_THROWS_AS(instance("abab", 0, {}), BadK);
    CHECK_THROWS_AS(instance("abab", 4, {}), BadK);
    CHECK_THROWS_AS(instance("abab", 5, {}), BadK);
    CHECK_THROWS_AS(build_instance(seq("ab#b"), 2, {}), SeparatorInInput);
    CHECK_THROWS_AS(instance("abab", 2, {"aba"}), BadPattern);
    CHECK_THROWS_AS(build_instance(seq("abab"), 2, {Sequence{0, 5}}, 2), BadPattern);
    CHECK_THROWS_AS(build_instance_from_positions(seq("abab"), 2, {3}), BadPosition);
    CHECK_NOTHROW(build_instance_from_positions(seq("abab"), 2, {2}));
}

TEST_CASE("kmer counts skip windows crossing separators") {
    auto idx = kmer_counts(seq("aabaa#aaacbcbbba#baabbacaab"), 4);
    CHECK(idx.count(seq("aaba")) == 1);
    CHECK(idx.count(seq("caab")) == 1);
    CHECK(idx.count(seq("baa#")) == 0);
    CHECK(idx.count(seq("aaaa")) == 0);
    CHECK(idx.total() == 2 + 7 + 7);
    CHECK(kmer_counts(seq("ab"), 3).total() == 0);
}

TEST_CASE("windows and sensitive detection") {
    std::vector<std::size_t> starts;
    for_each_window(seq("abc#abcd"), 3, [&](std::size_t p) { starts.push_back(p); });
    CHECK(starts == std::vector<std::size_t>{0, 4, 5});

    auto inst = instance("aabaaacbcbbbaabbacaab", 4, {"baaa", "bbaa"});
    CHECK_FALSE(contains_sensitive(seq("aabaa#aaacbcbbba#baabbacaab"), inst));
    CHECK(first_sensitive(inst.W, inst) == std::size_t{2});
    CHECK(first_sensitive(seq("bba#a"), inst) == std::nullopt);
    CHECK_FALSE(first_sensitive(seq("bbaa"), 4, KmerSet{}).has_value());
}

TEST_CASE("random instances partition the windows") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 200; ++it) {
        std::size_t k = 2 + rng() % 3, n = k + 1 + rng() % 30, sigma = 2 + rng() % 3;
        auto inst = random_instance(rng, n, sigma, k);
        CHECK(inst.S.size() + inst.I.size() == n - k + 1);
        for (auto i : inst.S) CHECK(inst.is_sensitive(TokenSpan(inst.W).subspan(i, k)));
        for (auto i : inst.I) CHECK_FALSE(inst.is_sensitive(TokenSpan(inst.W).subspan(i, k)));
    }
}
