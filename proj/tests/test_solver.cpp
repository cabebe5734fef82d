#include <doctest.h>

#include <random>

#include "permforge/oracle.hpp"
#include "permforge/solver.hpp"
#include "test_support.hpp"

using namespace permforge;
using testsupport::step_model;

namespace {

std::mt19937 test_rng(0xCAFE1234u);

Model avoid_1324_with_inversions(int length, int inversions) {
    Model m;
    m.length = length;
    m.constraints.push_back(
        PatternConstraint{PatternSpec::classic(Permutation({1, 3, 2, 4})), Mode::avoid});
    m.constraints.push_back(StatisticConstraint{
        {{{1, StatisticKind::inversions}}, Comparator::eq, inversions, std::nullopt}});
    return m;
}

std::vector<Permutation> solution_perms(const SolveOutcome& outcome) {
    std::vector<Permutation> perms;
    perms.reserve(outcome.solutions.size());
    for (const Solution& s : outcome.solutions) perms.push_back(s.perm);
    return perms;
}

} // namespace

TEST_CASE("an unconstrained model counts the whole symmetric group") {
    Model m;
    m.length = 4;
    CHECK(solve(m).count == 24);
}

TEST_CASE("the composed example narrows to the published counts") {
    const std::uint64_t step4_expected[] = {0, 1, 2, 9, 19};
    for (int length = 5; length <= 9; ++length) {
        CHECK(solve(step_model(4, length)).count == step4_expected[length - 5]);
    }
    CHECK(solve(step_model(1, 7)).count == 429);
    CHECK(solve(step_model(2, 7)).count == 180);
    CHECK(solve(step_model(3, 7)).count == 102);
}

TEST_CASE("fixed-inversion avoiders of length 5") {
    SolveConfig cfg;
    cfg.mode = SolveMode::enumerate;
    const SolveOutcome outcome = solve(avoid_1324_with_inversions(5, 9), cfg);
    CHECK(solution_perms(outcome) ==
          std::vector<Permutation>{Permutation({4, 5, 3, 2, 1}), Permutation({5, 3, 4, 2, 1}),
                                   Permutation({5, 4, 2, 3, 1}), Permutation({5, 4, 3, 1, 2})});
}

TEST_CASE("fixed-inversion avoiders of length 6 with 6 inversions") {
    CHECK(solve(avoid_1324_with_inversions(6, 6)).count == 51);
}

TEST_CASE("prefix feasibility is sound") {
    Model avoid1324;
    avoid1324.length = 9;
    avoid1324.constraints.push_back(
        PatternConstraint{PatternSpec::classic(Permutation({1, 3, 2, 4})), Mode::avoid});
    CHECK_FALSE(prefix_feasible({{1, 3, 2, 4}}, avoid1324));
    CHECK(prefix_feasible({{1, 3, 2}}, avoid1324));

    Model contain123;
    contain123.length = 3;
    contain123.constraints.push_back(
        PatternConstraint{PatternSpec::classic(Permutation({1, 2, 3})), Mode::contain});
    CHECK(prefix_feasible({{2, 1}}, contain123));

    // ten inversions already inside the prefix exceed the target of nine
    Model inv9 = avoid_1324_with_inversions(6, 9);
    CHECK_FALSE(prefix_feasible({{6, 5, 4, 3, 2}}, inv9));
    CHECK(prefix_feasible({{6, 5, 4}}, inv9));

    CHECK_THROWS_AS(prefix_feasible({{1, 1}}, avoid1324), ValidationError);
    CHECK_THROWS_AS(prefix_feasible({{11}}, avoid1324), ValidationError);
}

TEST_CASE("split_work returns lexicographic feasible prefixes") {
    Model free4;
    free4.length = 4;
    SolveConfig depth1;
    depth1.split_depth = 1;
    const auto tasks1 = split_work(free4, depth1);
    REQUIRE(tasks1.size() == 4);
    for (int v = 1; v <= 4; ++v) CHECK(tasks1[static_cast<size_t>(v) - 1].prefix == std::vector<int>{v});

    SolveConfig depth2;
    depth2.split_depth = 2;
    const auto tasks2 = split_work(free4, depth2);
    REQUIRE(tasks2.size() == 12);
    CHECK(tasks2.front().prefix == std::vector<int>{1, 2});
    CHECK(tasks2.back().prefix == std::vector<int>{4, 3});

    // avoidance of 12 only prunes prefixes that already contain an ascent
    Model descending;
    descending.length = 5;
    descending.constraints.push_back(
        PatternConstraint{PatternSpec::classic(Permutation({1, 2})), Mode::avoid});
    const auto tasks3 = split_work(descending, depth1);
    CHECK(tasks3.size() == 5);
    const auto tasks4 = split_work(descending, depth2);
    for (const PartialAssignment& pa : tasks4) CHECK(pa.prefix[0] > pa.prefix[1]);

    SolveConfig too_deep;
    too_deep.split_depth = 4;
    CHECK_THROWS_AS(split_work(free4, too_deep), ValidationError);
}

TEST_CASE("outcomes are identical across workers and split depths") {
    const Model m = step_model(4, 8);
    SolveConfig base;
    base.mode = SolveMode::enumerate;
    const SolveOutcome reference = solve(m, base);
    CHECK(reference.count == 9);

    for (int workers : {1, 2, 8}) {
        for (int depth : {0, 1, 2, 3}) {
            SolveConfig cfg;
            cfg.mode = SolveMode::enumerate;
            cfg.workers = workers;
            cfg.split_depth = depth;
            const SolveOutcome outcome = solve(m, cfg);
            CHECK(outcome.count == reference.count);
            CHECK(outcome.solutions == reference.solutions);
            CHECK(outcome.exhausted == reference.exhausted);
        }
    }
}

TEST_CASE("disabling pruning changes nothing but the work done") {
    for (const Model& m : {step_model(4, 7), avoid_1324_with_inversions(6, 6)}) {
        SolveConfig pruned;
        pruned.mode = SolveMode::enumerate;
        SolveConfig leaf_only;
        leaf_only.mode = SolveMode::enumerate;
        leaf_only.pruning = false;
        CHECK(solve(m, pruned).solutions == solve(m, leaf_only).solutions);
    }
}

TEST_CASE("solver agrees with brute force on randomized models") {
    for (int trial = 0; trial < 60; ++trial) {
        const int length = 1 + static_cast<int>(test_rng() % 7);
        const Model m = testsupport::random_model(length, test_rng);
        CAPTURE(serialize_model(m));

        const SolveOutcome expected = brute_force_solve(m);
        SolveConfig cfg;
        cfg.mode = SolveMode::enumerate;
        cfg.workers = trial % 2 == 0 ? 1 : 2;
        cfg.split_depth = trial % 4;
        const SolveOutcome actual = solve(m, cfg);

        CHECK(actual.count == expected.count);
        CHECK(actual.solutions == expected.solutions);

        SolveConfig leaf_only = cfg;
        leaf_only.pruning = false;
        CHECK(solve(m, leaf_only).solutions == expected.solutions);
    }
}

TEST_CASE("avoidance-only models agree with brute force") {
    for (int trial = 0; trial < 40; ++trial) {
        const int length = 2 + static_cast<int>(test_rng() % 6);
        Model m;
        m.length = length;
        const int npatterns = 1 + static_cast<int>(test_rng() % 3);
        for (int i = 0; i < npatterns; ++i) {
            m.constraints.push_back(
                PatternConstraint{testsupport::random_pattern(4, test_rng), Mode::avoid});
        }
        CAPTURE(serialize_model(m));
        CHECK(solution_perms(solve(m, {.mode = SolveMode::enumerate})) ==
              solution_perms(brute_force_solve(m)));
    }
}

TEST_CASE("limits truncate the stream deterministically") {
    Model m;
    m.length = 4;

    SolveConfig cfg;
    cfg.mode = SolveMode::enumerate;
    cfg.limit = 5;
    const SolveOutcome first5 = solve(m, cfg);
    CHECK(first5.count == 5);
    CHECK_FALSE(first5.exhausted);
    CHECK(first5.solutions.front().perm == Permutation({1, 2, 3, 4}));
    CHECK(first5.solutions.back().perm == Permutation({1, 4, 2, 3}));

    cfg.limit = 24;
    CHECK_FALSE(solve(m, cfg).exhausted);
    cfg.limit = 25;
    CHECK(solve(m, cfg).exhausted);

    cfg.limit = 5;
    cfg.workers = 4;
    cfg.split_depth = 2;
    const SolveOutcome parallel5 = solve(m, cfg);
    CHECK(parallel5.solutions == first5.solutions);
    CHECK_FALSE(parallel5.exhausted);
}

TEST_CASE("solve_stream delivers in order and honors early stop") {
    Model m;
    m.length = 4;
    m.emit = {StatisticKind::inversions};
    std::vector<Permutation> seen;
    solve_stream(m, {}, [&](const Solution& s) {
        CHECK(s.stats[0] == statistic(s.perm, StatisticKind::inversions));
        seen.push_back(s.perm);
        return seen.size() < 3;
    });
    CHECK(seen == std::vector<Permutation>{Permutation({1, 2, 3, 4}), Permutation({1, 2, 4, 3}),
                                           Permutation({1, 3, 2, 4})});
}

TEST_CASE("a node budget aborts loudly instead of lying") {
    Model m;
    m.length = 8;
    SolveConfig cfg;
    cfg.node_budget = 1000;
    CHECK_THROWS_AS(solve(m, cfg), ResourceLimit);

    cfg.node_budget = std::nullopt;
    cfg.workers = 0;
    CHECK_THROWS_AS(solve(m, cfg), ValidationError);
}

TEST_CASE("containment of a pattern longer than the target empties the model") {
    Model m;
    m.length = 2;
    m.constraints.push_back(
        PatternConstraint{PatternSpec::classic(Permutation({1, 2, 3})), Mode::contain});
    CHECK(solve(m).count == 0);

    Model n;
    n.length = 2;
    n.constraints.push_back(
        PatternConstraint{PatternSpec::classic(Permutation({1, 2, 3})), Mode::avoid});
    CHECK(solve(n).count == 2);
}
