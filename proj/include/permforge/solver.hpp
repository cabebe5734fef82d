#ifndef PERMFORGE_SOLVER_HPP
#define PERMFORGE_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "permforge/model.hpp"

namespace permforge {

enum class SolveMode { count, enumerate };

struct SolveConfig {
    int workers = 1;
    int split_depth = 2;
    std::optional<std::uint64_t> limit;
    SolveMode mode = SolveMode::count;
    /// Leaf-check-only search when false; prunes never change the solution
    /// set, only how early dead subtrees are abandoned.
    bool pruning = true;
    /// Abort with ResourceLimit once this many nodes were expanded.
    std::optional<std::uint64_t> node_budget;
};

/// A solution permutation together with the values of the model's emitted
/// statistics, in emit order.
struct Solution {
    Permutation perm;
    std::vector<std::uint64_t> stats;
    bool operator==(const Solution&) const = default;
};

struct SolveOutcome {
    std::uint64_t count = 0;
    std::vector<Solution> solutions; // populated in enumerate mode only
    /// False iff the limit stopped the search; a run that emits exactly
    /// `limit` solutions reports false even when nothing further exists.
    bool exhausted = true;
};

/// Values assigned to positions 1..m of a permutation of the model's length.
struct PartialAssignment {
    std::vector<int> prefix;
    bool operator==(const PartialAssignment&) const = default;
};

/// Exhaustive search for all permutations of the model's length satisfying
/// every constraint. Enumeration order is lexicographic on images and
/// independent of workers and split depth.
SolveOutcome solve(const Model& m, const SolveConfig& cfg = {});

/// Streaming enumeration in lexicographic order; the sink returns false to
/// stop early. cfg.mode is ignored. cfg.limit still applies.
void solve_stream(const Model& m, const SolveConfig& cfg,
                  const std::function<bool(const Solution&)>& sink);

/// Sound incompleteness test: false only when no completion of the prefix can
/// satisfy the model; true promises nothing.
bool prefix_feasible(const PartialAssignment& pa, const Model& m);

/// All feasible-so-far prefixes of length cfg.split_depth, in lexicographic
/// order. Their subtree solution sets partition the full solution set.
std::vector<PartialAssignment> split_work(const Model& m, const SolveConfig& cfg);

} // namespace permforge

#endif
