#include "permforge/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace permforge {

SolveOutcome brute_force_solve(const Model& m) {
    validate_model(m);
    if (m.length > kOracleLengthCap) {
        throw LengthCapExceeded("brute force refuses length " + std::to_string(m.length) +
                                " (cap " + std::to_string(kOracleLengthCap) + ")");
    }

    std::vector<int> values(static_cast<size_t>(m.length));
    std::iota(values.begin(), values.end(), 1);

    SolveOutcome outcome;
    do {
        Permutation perm(values);
        bool ok = true;
        for (const Constraint& c : m.constraints) {
            if (!satisfies(perm, c)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ++outcome.count;
        std::vector<std::uint64_t> stats;
        stats.reserve(m.emit.size());
        for (StatisticKind kind : m.emit) stats.push_back(statistic(perm, kind));
        outcome.solutions.push_back({std::move(perm), std::move(stats)});
    } while (std::next_permutation(values.begin(), values.end()));

    outcome.exhausted = true;
    return outcome;
}

} // namespace permforge
