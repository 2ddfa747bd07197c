#include <doctest.h>

#include <cmath>

#include "strsan/eval.hpp"
#include "strsan/mcsr.hpp"
#include "strsan/oracles.hpp"
#include "strsan/pfs.hpp"
#include "support/random_instances.hpp"

using namespace strsan;
using namespace strsan::testing;

namespace {

SanitizationInstance running() { return instance("aabaaacbcbbbaabbacaab", 4, {"baaa", "bbaa"}); }
const char* kY = "aaacbcbbba#aabaabbacaab";

const MckElement* find_choice(const std::vector<MckElement>& cls, Choice ch) {
    for (const auto& e : cls)
        if (e.choice == ch) return &e;
    return nullptr;
}

}  // namespace

TEST_CASE("context around a separator") {
    auto Y = seq(kY);
    CHECK(separator_positions(Y) == std::vector<std::size_t>{10});
    auto c = context_of(Y, 4, 0, Token{2});
    CHECK(str(c.tokens) == "bbacaab");
    CHECK(c.origin == 7);
    CHECK(c.left == 3);
    CHECK(str(context_string(Y, 4, 0, std::nullopt)) == "bbaaab");
    CHECK_THROWS_AS(context_of(Y, 4, 1, Token{0}), std::out_of_range);
}

TEST_CASE("context stops at neighbouring separators and text ends") {
    auto Y = seq("ab#c#dd");
    CHECK(str(context_string(Y, 4, 0, Token{0})) == "abac");
    CHECK(str(context_string(Y, 4, 1, std::nullopt)) == "cdd");
}

TEST_CASE("separator choices of the running example") {
    auto inst = running();
    auto Y = seq(kY);
    auto cm = CostModel::uniform(1);
    auto cands = candidate_ghosts(Y, 4, 1, inst.sigma);
    auto mck = build_mck(Y, 4, inst.sigma, cands, cm, inst.sensitive, nullptr);
    REQUIRE(mck.classes.size() == 1);
    CHECK(mck.capacity == 1);
    const auto& cls = mck.classes[0];
    CHECK(find_choice(cls, Token{0}) == nullptr);
    CHECK(find_choice(cls, std::nullopt) == nullptr);
    REQUIRE(find_choice(cls, Token{2}) != nullptr);
    CHECK(find_choice(cls, Token{2})->cost == 0.0);
    REQUIRE(find_choice(cls, Token{1}) != nullptr);
    CHECK(find_choice(cls, Token{1})->cost == 2.0);

    auto res = mcsr_sanitize(Y, inst, cm, nullptr);
    CHECK(str(res.Z) == "aaacbcbbbacaabaabbacaab");
    CHECK(res.choices == std::vector<Choice>{Token{2}});
    CHECK(res.estimated_cost == 0.0);
    CHECK(res.resolves == 0);
    CHECK(lost_ghost(inst.W, res.Z, 4, 1, inst.sensitive).lost.empty());
}

TEST_CASE("ghost candidates match a direct count for one separator") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 200; ++it) {
        std::size_t k = 2 + rng() % 3, sigma = 2 + rng() % 2, tau = 1 + rng() % 3;
        Sequence Y = random_string(rng, 6 + rng() % 15, sigma);
        std::size_t p = rng() % Y.size();
        Y[p] = kSeparator;
        auto cands = candidate_ghosts(Y, k, tau, sigma);
        auto base = kmer_counts(Y, k);
        KmerMap<std::uint64_t> best;
        for (std::size_t a = 0; a <= sigma; ++a) {
            Sequence Z = Y;
            if (a < sigma)
                Z[p] = static_cast<Token>(a);
            else
                Z.erase(Z.begin() + static_cast<std::ptrdiff_t>(p));
            auto counts = kmer_counts(Z, k);
            for (const auto& [u, c] : counts.map()) {
                auto& b = best[u];
                b = std::max(b, c);
            }
        }
        std::size_t expected = 0;
        for (const auto& [u, mz] : best) {
            bool ghost = base.count(u) < tau && mz >= tau;
            expected += ghost;
            auto it = cands.find(u);
            REQUIRE((it != cands.end()) == ghost);
            if (ghost) CHECK(it->second.max_freq_z == mz);
        }
        CHECK(cands.size() == expected);
    }
}

TEST_CASE("knapsack solver on fixed instances") {
    MckInstance inst;
    inst.classes = {{{Token{0}, 5, 1}, {Token{1}, 1, 3}}, {{Token{0}, 4, 1}, {std::nullopt, 0, 2}}};
    inst.capacity = 4;
    auto sel = solve_mck(inst);
    CHECK(sel.cost == 5.0);
    CHECK(sel.weight <= 4);
    inst.capacity = 5;
    CHECK(solve_mck(inst).cost == 1.0);
    inst.capacity = 1;
    CHECK_THROWS_AS(solve_mck(inst), Infeasible);
    inst.classes.push_back({});
    inst.capacity = 100;
    CHECK_THROWS_AS(solve_mck(inst), Infeasible);
    CHECK(solve_mck(MckInstance{}).picks.empty());
}

TEST_CASE("knapsack solver matches exhaustive search") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 500; ++it) {
        MckInstance inst;
        std::size_t d = 1 + rng() % 5;
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<MckElement> cls;
            std::size_t m = 1 + rng() % 5;
            for (std::size_t e = 0; e < m; ++e)
                cls.push_back({static_cast<Token>(e), static_cast<double>(rng() % 10),
                               static_cast<std::int64_t>(rng() % 4)});
            inst.classes.push_back(cls);
        }
        inst.capacity = static_cast<std::int64_t>(rng() % 13);
        std::optional<MckSelection> exact;
        try {
            exact = oracle_mck(inst);
        } catch (const Infeasible&) {
        }
        if (!exact) {
            CHECK_THROWS_AS(solve_mck(inst), Infeasible);
            continue;
        }
        auto sel = solve_mck(inst);
        CHECK(sel.cost == doctest::Approx(exact->cost));
        CHECK(sel.weight <= inst.capacity);
        double cost = 0;
        std::int64_t weight = 0;
        for (std::size_t i = 0; i < d; ++i) {
            cost += inst.classes[i][sel.picks[i]].cost;
            weight += inst.classes[i][sel.picks[i]].weight;
        }
        CHECK(cost == doctest::Approx(sel.cost));
        CHECK(weight == sel.weight);
    }
}

TEST_CASE("z-score values") {
    CHECK(z_score(seq("ababab"), seq("aba")) == doctest::Approx(0.0));
    CHECK(z_score(seq("aaaa"), seq("aaa")) == doctest::Approx(-1.0 / 6.0));
    // Unseen middle gives zero expectation.
    CHECK(z_score(seq("aaaa"), seq("bbb")) == doctest::Approx(0.0));
    CHECK_THROWS_AS(z_score(seq("aaaa"), seq("aa")), std::invalid_argument);
    CHECK_THROWS_AS(ZScorer(seq("aaaa"), 2), BadK);
}

TEST_CASE("indexed z-score agrees with direct scanning") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 100; ++it) {
        std::size_t k = 3 + rng() % 3, sigma = 2 + rng() % 3;
        Sequence W = random_string(rng, k + rng() % 40, sigma);
        ZScorer z(W, k);
        for (int q = 0; q < 20; ++q) {
            Sequence U = random_string(rng, k, sigma);
            CHECK(z(U) == doctest::Approx(z_score(W, U)));
        }
    }
}

TEST_CASE("implausible set matches brute force over all patterns") {
    std::mt19937_64 rng(29);
    for (int it = 0; it < 60; ++it) {
        std::size_t k = 3 + rng() % 2, sigma = 2 + rng() % 2;
        Sequence W = random_string(rng, 10 + rng() % 40, sigma);
        double rho = -0.1 * static_cast<double>(rng() % 10);
        auto got = implausible_set(W, k, sigma, rho);
        std::size_t total = 1;
        for (std::size_t i = 0; i < k; ++i) total *= sigma;
        std::size_t expected = 0;
        for (std::size_t code = 0; code < total; ++code) {
            Sequence U(k);
            std::size_t c = code;
            for (std::size_t i = 0; i < k; ++i, c /= sigma) U[k - 1 - i] = static_cast<Token>(c % sigma);
            bool implausible = z_score(W, U) < rho;
            expected += implausible;
            CHECK((got.find(U) != got.end()) == implausible);
        }
        CHECK(got.size() == expected);
    }
    CHECK_THROWS_AS(implausible_set(seq("abab"), 2, 2, -1), BadK);
    CHECK_THROWS_AS(implausible_set(seq("abab"), 3, 2, 0.5), std::invalid_argument);
}

TEST_CASE("site windows") {
    auto Z = seq("abcdef");
    std::vector<std::size_t> got;
    for_each_site_window(Z, 3, {2, false}, [&](std::size_t s) { got.push_back(s); });
    CHECK(got == std::vector<std::size_t>{0, 1, 2});
    got.clear();
    for_each_site_window(Z, 3, {2, true}, [&](std::size_t s) { got.push_back(s); });
    CHECK(got == std::vector<std::size_t>{0, 1});
    got.clear();
    for_each_site_window(Z, 3, {0, true}, [&](std::size_t s) { got.push_back(s); });
    CHECK(got.empty());
    got.clear();
    for_each_site_window(Z, 3, {5, false}, [&](std::size_t s) { got.push_back(s); });
    CHECK(got == std::vector<std::size_t>{3});
}

TEST_CASE("every choice forbidden is infeasible") {
    auto inst = instance("aabba", 2, {"aa", "ab", "bb"});
    auto Y = seq("a#b");
    CHECK_THROWS_AS(mcsr_sanitize(Y, inst, CostModel::uniform(1), nullptr), Infeasible);
}

TEST_CASE("forbidden choices and capacity in a custom cost model") {
    auto inst = running();
    auto Y = seq(kY);
    CostModel cm = CostModel::uniform(1);
    cm.sub = [](std::size_t, Choice ch) -> std::optional<std::int64_t> {
        if (ch == Choice{Token{2}}) return std::nullopt;
        return 1;
    };
    auto res = mcsr_sanitize(Y, inst, cm, nullptr);
    CHECK(str(res.Z) == "aaacbcbbbabaabaabbacaab");
    cm.theta = 0;
    CHECK_THROWS_AS(mcsr_sanitize(Y, inst, cm, nullptr), Infeasible);
}

TEST_CASE("replacement respects sensitive and implausible windows on random inputs") {
    std::mt19937_64 rng(31);
    std::size_t solved = 0;
    for (int it = 0; it < 300; ++it) {
        std::size_t k = 3 + rng() % 3, n = k + 1 + rng() % 80, sigma = 2 + rng() % 3;
        auto inst = random_instance(rng, n, sigma, k, 0.15);
        auto Y = pfs_sanitize(inst);
        KmerSet bad = implausible_set(inst.W, k, sigma, -0.5);
        const KmerSet* imp = it % 2 ? &bad : nullptr;
        try {
            auto res = mcsr_sanitize(Y.tokens, inst, CostModel::uniform(1 + rng() % 3), imp);
            ++solved;
            CHECK(separator_positions(res.Z).empty());
            CHECK(res.Z.size() + res.choices.size() >= Y.size());
            CHECK_FALSE(contains_sensitive(res.Z, inst));
            if (imp) CHECK(implausible_percentage(res.Z, k, res.sites, bad) == 0.0);
            CHECK(res.weight <= res.capacity);
        } catch (const Infeasible&) {
        }
    }
    CHECK(solved > 100);
}

TEST_CASE("knapsack tie-break chooses among co-optimal elements only") {
    struct PreferLast final : MckTieBreak {
        std::vector<std::pair<std::size_t, std::size_t>> seen, committed;
        double score(std::size_t i, std::size_t e) override {
            seen.emplace_back(i, e);
            return -static_cast<double>(e);
        }
        void commit(std::size_t i, std::size_t e) override { committed.emplace_back(i, e); }
    };
    MckInstance inst;
    inst.classes = {{{Token{0}, 1, 1}, {Token{1}, 1, 1}, {Token{2}, 3, 1}},
                    {{Token{0}, 0, 1}, {Token{1}, 0, 1}}};
    inst.capacity = 2;
    PreferLast tie;
    auto sel = solve_mck(inst, &tie);
    CHECK(sel.cost == 1.0);
    CHECK(sel.picks == std::vector<std::size_t>{1, 1});
    CHECK(tie.committed == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 1}});
    for (const auto& [i, e] : tie.seen) CHECK_FALSE((i == 0 && e == 2));
    CHECK(solve_mck(inst).picks == std::vector<std::size_t>{0, 0});
}
