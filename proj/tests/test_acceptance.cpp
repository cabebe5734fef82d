#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "permforge/oracle.hpp"
#include "permforge/solver.hpp"
#include "permforge/sweep.hpp"
#include "test_support.hpp"

using namespace permforge;
using testsupport::step_model;

namespace {

using Clock = std::chrono::steady_clock;

// Collects mismatches for one acceptance criterion and prints a single
// verdict line; every criterion appears exactly once in the output.
class Criterion {
public:
    Criterion(int number, std::string title)
        : number_(number), title_(std::move(title)), started_(Clock::now()) {}

    template <typename A, typename B>
    void equal(const std::string& what, const A& actual, const B& expected) {
        if (actual == expected) return;
        ok_ = false;
        std::ostringstream msg;
        msg << "  criterion " << number_ << " mismatch, " << what << ": got " << actual
            << ", want " << expected;
        std::puts(msg.str().c_str());
    }

    void require(const std::string& what, bool condition) {
        if (condition) return;
        ok_ = false;
        std::printf("  criterion %d failed: %s\n", number_, what.c_str());
    }

    bool finish() {
        const double elapsed = std::chrono::duration<double>(Clock::now() - started_).count();
        std::printf("[%s] criterion %d: %s (%.2fs)\n", ok_ ? "PASS" : "FAIL", number_,
                    title_.c_str(), elapsed);
        std::fflush(stdout);
        return ok_;
    }

    double elapsed_seconds() const {
        return std::chrono::duration<double>(Clock::now() - started_).count();
    }

private:
    int number_;
    std::string title_;
    Clock::time_point started_;
    bool ok_ = true;
};

SolveConfig parallel_config() {
    SolveConfig cfg;
    cfg.workers = 2;
    cfg.split_depth = 2;
    return cfg;
}

int run_binary(const std::string& args) {
    const std::string command = std::string(PERMFORGE_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("criterion 1: composed-model count table, lengths 5..10 plus extension") {
    Criterion crit(1, "composed-model count table, steps 1-4");

    const std::uint64_t expected[4][6] = {
        {42, 132, 429, 1430, 4862, 16796},
        {8, 41, 180, 730, 2841, 10815},
        {2, 19, 102, 455, 1865, 7321},
        {0, 1, 2, 9, 19, 53},
    };
    for (int step = 1; step <= 4; ++step) {
        for (int length = 5; length <= 10; ++length) {
            const std::uint64_t count = solve(step_model(step, length), parallel_config()).count;
            crit.equal("step " + std::to_string(step) + " length " + std::to_string(length),
                       count, expected[step - 1][length - 5]);
        }
    }

    const std::uint64_t extended[] = {106, 255, 493};
    for (int length = 11; length <= 13; ++length) {
        crit.equal("step 4 length " + std::to_string(length),
                   solve(step_model(4, length), parallel_config()).count,
                   extended[length - 11]);
    }

    crit.require("runtime under 10 minutes", crit.elapsed_seconds() < 600.0);
    CHECK(crit.finish());
}

TEST_CASE("criterion 2: the four avoiders of length 5 with nine inversions") {
    Criterion crit(2, "length-5 avoiders with 9 inversions enumerate exactly");

    Model m;
    m.length = 5;
    m.constraints.push_back(
        PatternConstraint{PatternSpec::classic(Permutation({1, 3, 2, 4})), Mode::avoid});
    m.constraints.push_back(
        StatisticConstraint{{{{1, StatisticKind::inversions}}, Comparator::eq, 9, std::nullopt}});

    SolveConfig cfg;
    cfg.mode = SolveMode::enumerate;
    const SolveOutcome outcome = solve(m, cfg);

    std::vector<Permutation> got;
    for (const Solution& s : outcome.solutions) got.push_back(s.perm);
    const std::vector<Permutation> want = {
        Permutation({4, 5, 3, 2, 1}),
        Permutation({5, 3, 4, 2, 1}),
        Permutation({5, 4, 2, 3, 1}),
        Permutation({5, 4, 3, 1, 2}),
    };
    crit.require("solution set matches", got == want);
    crit.require("runtime under 1 second", crit.elapsed_seconds() < 1.0);
    CHECK(crit.finish());
}

TEST_CASE("criterion 3: inversion-grid rows 1..10 for columns 0..20") {
    Criterion crit(3, "inversion sweep grid matches the published cells");

    const std::vector<std::vector<std::uint64_t>> expected = {
        {1},
        {1, 1},
        {1, 2, 2, 1},
        {1, 2, 5, 6, 5, 3, 1},
        {1, 2, 5, 10, 16, 20, 20, 15, 9, 4, 1},
        {1, 2, 5, 10, 20, 32, 51, 67, 79, 80, 68, 49, 29, 14, 5, 1},
        {1, 2, 5, 10, 20, 36, 61, 96, 148, 208, 268, 321, 351, 347, 308, 241, 165, 98, 49, 20, 6},
        {1, 2, 5, 10, 20, 36, 65, 106, 171, 262, 397, 568, 784, 1019, 1264, 1478, 1628, 1681,
         1619, 1441, 1173},
        {1, 2, 5, 10, 20, 36, 65, 110, 181, 286, 443, 664, 985, 1416, 1988, 2715, 3589, 4579,
         5631, 6654, 7559},
        {1, 2, 5, 10, 20, 36, 65, 110, 185, 296, 467, 714, 1077, 1582, 2305, 3284, 4617, 6374,
         8665, 11521, 15012},
    };

    SweepSpec spec;
    spec.n_min = 1;
    spec.n_max = 10;
    spec.k_min = 0;
    spec.k_max = 20;
    const SweepResult result = run_sweep(spec, 2, 2);

    for (int n = 1; n <= 10; ++n) {
        const auto& row = result.counts[static_cast<size_t>(n) - 1];
        const auto& want = expected[static_cast<size_t>(n) - 1];
        for (int k = 0; k <= 20; ++k) {
            const std::uint64_t expected_cell =
                static_cast<size_t>(k) < want.size() ? want[static_cast<size_t>(k)] : 0;
            crit.equal("n=" + std::to_string(n) + " k=" + std::to_string(k),
                       row[static_cast<size_t>(k)], expected_cell);
        }
    }

    crit.require("runtime under 30 minutes", crit.elapsed_seconds() < 1800.0);
    CHECK(crit.finish());

    // criterion 4 reuses this sweep through a CSV round trip
    const auto csv_path = std::filesystem::temp_directory_path() /
                          ("permforge-acceptance-" + std::to_string(getpid()) + ".csv");
    std::ofstream(csv_path, std::ios::binary) << sweep_to_csv(result);

    Criterion crit4(4, "stabilization diagonal matches A000712 and compare-oeis exits 0");
    const SweepGrid grid = parse_sweep_csv(sweep_to_csv(result));
    const ReferenceSequence& ref = reference_sequence("A000712");
    for (int k = 0; k <= 8; ++k) {
        const auto diag = grid.cell(k + 2, k);
        crit4.require("diagonal cell present at k=" + std::to_string(k), diag.has_value());
        if (!diag) continue;
        crit4.equal("stabilized value at k=" + std::to_string(k), *diag,
                    ref.terms[static_cast<size_t>(k)]);
        for (int n = k + 3; n <= 10; ++n) {
            crit4.equal("constant column k=" + std::to_string(k) + " at n=" + std::to_string(n),
                        grid.cell(n, k).value(), *diag);
        }
    }
    crit4.equal("compare-oeis exit code",
                run_binary("compare-oeis " + csv_path.string() + " --sequence A000712"), 0);
    std::filesystem::remove(csv_path);
    CHECK(crit4.finish());
}

TEST_CASE("criterion 5: solver matches brute force on 200 randomized models") {
    Criterion crit(5, "oracle equivalence over randomized composed models");

    std::mt19937 rng(0xACCE5500u);
    int discrepancies = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int length = 1 + static_cast<int>(rng() % 7);
        const Model m = testsupport::random_model(length, rng);

        SolveConfig cfg;
        cfg.mode = SolveMode::enumerate;
        cfg.workers = 1 + static_cast<int>(rng() % 3);
        cfg.split_depth = static_cast<int>(rng() % 4);

        const SolveOutcome fast = solve(m, cfg);
        const SolveOutcome slow = brute_force_solve(m);
        if (fast.solutions != slow.solutions || fast.count != slow.count) {
            ++discrepancies;
            std::printf("  disagreement on model: %s\n", serialize_model(m).c_str());
        }
    }
    crit.equal("discrepancies over 200 models", discrepancies, 0);
    CHECK(crit.finish());
}

TEST_CASE("criterion 6: mesh reduction and specialization agree exhaustively") {
    Criterion crit(6, "pattern equivalences over all targets up to length 6");

    std::vector<Permutation> targets;
    for (int n = 1; n <= 6; ++n) {
        std::vector<int> v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
        do {
            targets.emplace_back(v);
        } while (std::next_permutation(v.begin(), v.end()));
    }

    const std::vector<PatternSpec> battery = {
        PatternSpec::classic(Permutation({1, 2, 3})),
        PatternSpec::classic(Permutation({2, 1})),
        PatternSpec::vincular(Permutation({1, 3, 2}), {1}),
        PatternSpec::bivincular(Permutation({3, 1, 2}), {2}, {2}),
        PatternSpec::mesh(Permutation({1, 3, 2}), {{0, 0}, {2, 1}, {2, 2}}),
        PatternSpec::mesh(Permutation({1, 3, 2}), {{0, 0}, {2, 0}, {2, 1}, {2, 2}}),
        PatternSpec::boxed(Permutation({2, 3, 1})),
        PatternSpec::consecutive(Permutation({3, 1, 2})),
        PatternSpec::classic(Permutation({1, 3, 2, 4})),
        PatternSpec::mesh(Permutation({2, 1, 3}), {{0, 0}, {0, 1}, {1, 0}, {1, 1}}),
        PatternSpec::mesh(Permutation({1, 2, 3}), {{1, 2}, {2, 1}, {1, 3}, {3, 1}}),
    };

    int mesh_disagreements = 0;
    for (const PatternSpec& pattern : battery) {
        const PatternSpec meshform = to_mesh(pattern);
        for (const Permutation& target : targets) {
            if (contains(target, pattern) != contains(target, meshform)) ++mesh_disagreements;
        }
    }
    crit.equal("mesh-reduction disagreements", mesh_disagreements, 0);

    int chain_disagreements = 0;
    for (const PatternSpec& pattern : battery) {
        const Permutation& base = pattern.base();
        const int k = base.size();
        std::vector<int> internal;
        for (int a = 1; a <= k - 1; ++a) internal.push_back(a);
        std::vector<Cell> box;
        for (int x = 1; x <= k - 1; ++x) {
            for (int y = 1; y <= k - 1; ++y) box.push_back({x, y});
        }
        const auto classic = PatternSpec::classic(base);
        const auto vinc0 = PatternSpec::vincular(base, {});
        const auto biv0 = PatternSpec::bivincular(base, {}, {});
        const auto consec = PatternSpec::consecutive(base);
        const auto consec_vinc = PatternSpec::vincular(base, internal);
        const auto boxed = PatternSpec::boxed(base);
        const auto boxed_mesh = PatternSpec::mesh(base, box);
        for (const Permutation& target : targets) {
            const bool c = contains(target, classic);
            if (contains(target, vinc0) != c) ++chain_disagreements;
            if (contains(target, biv0) != c) ++chain_disagreements;
            if (contains(target, consec) != contains(target, consec_vinc)) ++chain_disagreements;
            if (contains(target, boxed) != contains(target, boxed_mesh)) ++chain_disagreements;
        }
    }
    crit.equal("specialization-chain disagreements", chain_disagreements, 0);
    CHECK(crit.finish());
}

TEST_CASE("criterion 7: statistics golden values and Mahonian equidistribution") {
    Criterion crit(7, "statistics of 7164523 and inv/maj equidistribution");

    const Permutation sigma({7, 1, 6, 4, 5, 2, 3});
    crit.equal("inversions", statistic(sigma, StatisticKind::inversions), 14u);
    crit.equal("descents", statistic(sigma, StatisticKind::descents), 3u);
    crit.equal("ascents", statistic(sigma, StatisticKind::ascents), 3u);
    crit.equal("excedances", statistic(sigma, StatisticKind::excedances), 2u);
    crit.equal("major index", statistic(sigma, StatisticKind::major_index), 9u);

    for (int n = 1; n <= 8; ++n) {
        std::vector<int> v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
        std::vector<std::uint64_t> inv_hist;
        std::vector<std::uint64_t> maj_hist;
        const size_t buckets = static_cast<size_t>(n) * (n - 1) / 2 + 1;
        inv_hist.assign(buckets, 0);
        maj_hist.assign(buckets, 0);
        bool adjacent_ok = true;
        do {
            const Permutation p(v);
            ++inv_hist[statistic(p, StatisticKind::inversions)];
            ++maj_hist[statistic(p, StatisticKind::major_index)];
            adjacent_ok = adjacent_ok &&
                          statistic(p, StatisticKind::ascents) + statistic(p, StatisticKind::descents) ==
                              static_cast<std::uint64_t>(n - 1);
        } while (std::next_permutation(v.begin(), v.end()));
        crit.require("ascents+descents = n-1 at n=" + std::to_string(n), adjacent_ok);
        crit.require("inv/maj equidistributed at n=" + std::to_string(n), inv_hist == maj_hist);
    }
    CHECK(crit.finish());
}

TEST_CASE("criterion 8: identical outcomes across workers and split depths") {
    Criterion crit(8, "deterministic parallel outcomes on the length-10 composed model");

    const Model m = step_model(4, 10);
    SolveConfig base;
    base.mode = SolveMode::enumerate;
    const SolveOutcome reference = solve(m, base);
    crit.equal("reference count", reference.count, 53u);

    for (int workers : {1, 2, 8}) {
        for (int depth : {0, 1, 2, 3}) {
            SolveConfig cfg;
            cfg.mode = SolveMode::enumerate;
            cfg.workers = workers;
            cfg.split_depth = depth;
            const SolveOutcome outcome = solve(m, cfg);
            const std::string tag =
                "workers=" + std::to_string(workers) + " depth=" + std::to_string(depth);
            crit.equal("count " + tag, outcome.count, reference.count);
            crit.require("stream " + tag, outcome.solutions == reference.solutions);
        }
    }
    CHECK(crit.finish());
}
