#ifndef PERMFORGE_SWEEP_HPP
#define PERMFORGE_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permforge/solver.hpp"

namespace permforge {

/// Enumeration grid: for each length n in [n_min, n_max], count the
/// permutations avoiding `avoided` classically with exactly k inversions, for
/// k in [k_min, k_max].
struct SweepSpec {
    Permutation avoided = Permutation({1, 3, 2, 4});
    int n_min = 1;
    int n_max = 1;
    int k_min = 0;
    int k_max = 0;
};

struct SweepResult {
    SweepSpec spec;
    /// counts[n - n_min][k - k_min]; cells with k above n(n-1)/2 are zero.
    std::vector<std::vector<std::uint64_t>> counts;
};

SweepResult run_sweep(const SweepSpec& spec, int workers = 1, int split_depth = 2);

/// CSV form: header row of k-values, one row per n, first column n. Cells on
/// the stabilization diagonal (n = k + 2) are repeated as trailing '#'
/// comment lines.
std::string sweep_to_csv(const SweepResult& result);

/// Parsed sweep CSV; '#' comment lines are ignored.
struct SweepGrid {
    std::vector<int> ks;
    std::vector<int> ns;
    std::vector<std::vector<std::uint64_t>> cells; // cells[row][col]
    std::optional<std::uint64_t> cell(int n, int k) const;
};

/// Throws SyntaxError on malformed input, including an empty grid.
SweepGrid parse_sweep_csv(const std::string& text);

struct ReferenceSequence {
    std::string name;
    std::vector<std::uint64_t> terms;
};

/// Embedded reference terms; only "A000712" is known. Throws ValidationError
/// for unknown names.
const ReferenceSequence& reference_sequence(const std::string& name);

struct StabilizationCheck {
    int k = 0;
    std::uint64_t stabilized = 0;            // cell at n = k + 2
    bool constant_below = false;             // cells at n > k + 2 all agree
    std::optional<std::uint64_t> reference;  // embedded term, when available
    bool match = false;
};

/// For each k column whose stabilization row n = k + 2 is present, compares
/// the stabilized value (and every row below it) against the reference term.
std::vector<StabilizationCheck> compare_stabilized(const SweepGrid& grid,
                                                   const ReferenceSequence& ref);

} // namespace permforge

#endif
