#include <doctest.h>

#include "strsan/etfs.hpp"
#include "strsan/eval.hpp"
#include "strsan/oracles.hpp"
#include "strsan/tfs.hpp"
#include "support/random_instances.hpp"

using namespace strsan;
using namespace strsan::testing;

TEST_CASE("shortest valid string on small hand instances") {
    auto w = oracle_min_tfs(build_instance_from_positions(seq("baaabbbaba"), 4, {1, 3, 5}));
    CHECK(w.value == 19);
    CHECK(str(w.witness) == "baaa#aabb#bbba#baba");

    auto empty = oracle_min_tfs(instance("aaaaaab", 4, {"aaaa", "aaab"}));
    CHECK(empty.value == 0);

    auto none = oracle_min_tfs(instance("abab", 2, {}));
    CHECK(str(none.witness) == "abab");
}

TEST_CASE("closest valid string on small hand instances") {
    auto w = oracle_min_etfs(instance("aaaaaab", 4, {"aaaa", "aaab"}));
    CHECK(w.value == 1);
    CHECK(edit_distance(seq("aaaaaab"), w.witness) == 1);
    auto same = oracle_min_etfs(instance("abab", 2, {}));
    CHECK(same.value == 0);
}

TEST_CASE("budgets are enforced") {
    OracleBudget small;
    small.max_n = 5;
    CHECK_THROWS_AS(oracle_min_tfs(instance("abababab", 2, {}), small), BudgetExceeded);
    OracleBudget narrow;
    CHECK_THROWS_AS(oracle_min_tfs(instance("abcabc", 2, {}), narrow), BudgetExceeded);
    OracleBudget tiny;
    tiny.max_candidates = 10;
    CHECK_THROWS_AS(oracle_min_tfs(instance("aabbaabb", 2, {"bb"}), tiny), BudgetExceeded);
    std::vector<RankPair> many(8);
    CHECK_THROWS_AS(oracle_fo_ssm(many), BudgetExceeded);
}

TEST_CASE("exhaustive knapsack") {
    MckInstance inst;
    inst.classes = {{{Token{0}, 5, 1}, {Token{1}, 2, 3}}};
    inst.capacity = 3;
    auto sel = oracle_mck(inst);
    CHECK(sel.picks == std::vector<std::size_t>{1});
    CHECK(sel.cost == 2.0);
    inst.capacity = 2;
    CHECK(oracle_mck(inst).picks == std::vector<std::size_t>{0});
    inst.capacity = 0;
    CHECK_THROWS_AS(oracle_mck(inst), Infeasible);
}

TEST_CASE("rank string oracle") {
    CHECK(oracle_fo_ssm({}) == 0);
    CHECK(oracle_fo_ssm({{0, 1, 2}, {1, 0, 3}, {2, 2, 1}}) == 5);
    CHECK(oracle_fo_ssm({{0, 0, 0}, {1, 0, 0}}) == 3);
}

TEST_CASE("algorithms agree with the oracles on tiny random instances") {
    std::mt19937_64 rng(61);
    for (int it = 0; it < 60; ++it) {
        std::size_t k = 2 + rng() % 2, n = k + 1 + rng() % (8 - k);
        auto inst = random_instance(rng, n, 2, k, 0.3);
        INFO("W=", str(inst.W), " k=", k);
        CHECK(oracle_min_tfs(inst).value == tfs_sanitize(inst).size());
        CHECK(oracle_min_etfs(inst).value == etfs_sanitize(inst).distance);
    }
}
