#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "strsan/suffix_array.hpp"
#include "support/random_instances.hpp"

using namespace strsan;
using namespace strsan::testing;

namespace {

std::vector<std::uint32_t> naive_sa(const Sequence& s) {
    std::vector<std::uint32_t> sa(s.size());
    std::iota(sa.begin(), sa.end(), 0u);
    std::sort(sa.begin(), sa.end(), [&](auto a, auto b) {
        return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
    });
    return sa;
}

}  // namespace

TEST_CASE("suffix array of a small text") {
    auto s = seq("banana");
    CHECK(suffix_array(s) == std::vector<std::uint32_t>{5, 3, 1, 0, 4, 2});
    CHECK(lcp_array(s, suffix_array(s)) == std::vector<std::uint32_t>{0, 1, 3, 0, 0, 2});
    CHECK(suffix_array(Sequence{}).empty());
    CHECK(suffix_array(seq("a")) == std::vector<std::uint32_t>{0});
}

TEST_CASE("separator sorts after every letter") {
    auto s = seq("b#a");
    CHECK(suffix_array(s) == std::vector<std::uint32_t>{2, 0, 1});
}

TEST_CASE("suffix array and lcp match naive construction") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 300; ++it) {
        std::size_t n = rng() % 60, sigma = 1 + rng() % 4;
        Sequence s = random_string(rng, n, sigma);
        if (n > 3 && rng() % 2) s[rng() % n] = kSeparator;
        auto sa = suffix_array(s);
        REQUIRE(sa == naive_sa(s));
        auto lcp = lcp_array(s, sa);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t a = sa[i - 1], b = sa[i], l = 0;
            while (a + l < n && b + l < n && s[a + l] == s[b + l]) ++l;
            CHECK(lcp[i] == l);
        }
    }
}

TEST_CASE("gram classes are dense lexicographic ranks") {
    auto s = seq("aabaaacbcbbbaabbacaab");
    auto g = gram_classes(s, 3);
    CHECK(g.len == 3);
    CHECK(g.id[18] != GramClasses::kNone);
    CHECK(g.id[19] == GramClasses::kNone);
    for (std::size_t i = 0; i + 3 <= s.size(); ++i)
        for (std::size_t j = 0; j + 3 <= s.size(); ++j) {
            auto a = TokenSpan(s).subspan(i, 3), b = TokenSpan(s).subspan(j, 3);
            bool lt = std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
            bool eq = std::equal(a.begin(), a.end(), b.begin());
            CHECK((g.id[i] == g.id[j]) == eq);
            if (lt) CHECK(g.id[i] < g.id[j]);
        }
    KmerSet distinct;
    for (std::size_t i = 0; i + 3 <= s.size(); ++i) distinct.insert(to_kmer(TokenSpan(s).subspan(i, 3)));
    CHECK(g.count == distinct.size());
}

TEST_CASE("gram classes of length zero collapse to one class") {
    auto g = gram_classes(seq("abc"), 0);
    CHECK(g.count == 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(g.id[i] == 0);
}

TEST_CASE("suffix index counts occurrences") {
    auto s = seq("abababb");
    SuffixIndex idx(s);
    CHECK(idx.count(seq("ab")) == 3);
    CHECK(idx.count(seq("bab")) == 2);
    CHECK(idx.count(seq("abb")) == 1);
    CHECK(idx.count(seq("c")) == 0);
    CHECK(idx.count(seq("abababbb")) == 0);
    CHECK(idx.count(Sequence{}) == s.size() + 1);
}
