#ifndef PERMFORGE_ORACLE_HPP
#define PERMFORGE_ORACLE_HPP

#include "permforge/solver.hpp"

namespace permforge {

/// Hard length cap for brute force: 9! = 362880 candidates.
inline constexpr int kOracleLengthCap = 9;

/// Generate-and-test reference: materializes every permutation of the model's
/// length in lexicographic order and keeps those satisfying all constraints.
/// Same contract as solve() in enumerate mode with exhausted = true. Throws
/// LengthCapExceeded beyond the cap.
SolveOutcome brute_force_solve(const Model& m);

} // namespace permforge

#endif
