#ifndef PERMFORGE_PATTERNS_HPP
#define PERMFORGE_PATTERNS_HPP

#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

#include "permforge/permutation.hpp"

namespace permforge {

enum class PatternVariant { classic, vincular, bivincular, mesh, boxed, consecutive };

enum class Mode { contain, avoid };

/// Lower-left corner of a forbidden unit square in the padded plot of a
/// pattern of length k; both coordinates lie in 0..k.
struct Cell {
    int x = 0;
    int y = 0;
    auto operator<=>(const Cell&) const = default;
};

/// One of the six pattern variants over a base permutation of length k.
///
/// Payloads per variant:
///   classic      none
///   vincular     index adjacencies A, subset of 0..k (0 anchors the start,
///                k anchors the end, under the padded convention)
///   bivincular   index adjacencies A and value adjacencies B, subsets of 0..k
///   mesh         forbidden regions R, cells in 0..k x 0..k
///   boxed        implied R = [1,k-1] x [1,k-1]
///   consecutive  implied A = {1..k-1}
///
/// Duplicate adjacency / region entries are deduplicated silently; payloads
/// are stored sorted. Out-of-range payload entries throw ValidationError.
class PatternSpec {
public:
    static PatternSpec classic(Permutation base);
    static PatternSpec vincular(Permutation base, std::vector<int> adjacencies);
    static PatternSpec bivincular(Permutation base, std::vector<int> index_adjacencies,
                                  std::vector<int> value_adjacencies);
    static PatternSpec mesh(Permutation base, std::vector<Cell> regions);
    static PatternSpec boxed(Permutation base);
    static PatternSpec consecutive(Permutation base);

    PatternVariant variant() const { return variant_; }
    const Permutation& base() const { return base_; }
    int length() const { return base_.size(); }

    /// Stored payloads (empty for variants that do not carry that payload).
    const std::vector<int>& index_adjacencies() const { return index_adjacencies_; }
    const std::vector<int>& value_adjacencies() const { return value_adjacencies_; }
    const std::vector<Cell>& regions() const { return regions_; }

    /// Payloads with boxed / consecutive made explicit: the index adjacencies
    /// and regions a matcher must enforce for this variant.
    std::vector<int> effective_index_adjacencies() const;
    std::vector<Cell> effective_regions() const;

    bool operator==(const PatternSpec&) const = default;

private:
    PatternSpec(PatternVariant variant, Permutation base);

    PatternVariant variant_;
    Permutation base_;
    std::vector<int> index_adjacencies_;
    std::vector<int> value_adjacencies_;
    std::vector<Cell> regions_;
};

std::string_view variant_name(PatternVariant v);

/// True iff the subsequence of `target` at `occ` is order isomorphic to
/// `base`. Throws IndexOutOfRange for invalid indices, LengthMismatch when
/// |occ| != |base|.
bool classic_match_at(const Permutation& target, const Permutation& base, const Occurrence& occ);

/// True iff `occ` satisfies the pattern's full condition in `target`:
/// order isomorphism, index adjacencies, value adjacencies, and emptiness of
/// every forbidden region under the padded convention.
bool match_at(const Permutation& target, const PatternSpec& pattern, const Occurrence& occ);

/// True iff some occurrence satisfies the pattern's full condition.
/// A pattern longer than the target is never contained (not an error).
bool contains(const Permutation& target, const PatternSpec& pattern);

/// Exactly !contains(target, pattern).
bool avoids(const Permutation& target, const PatternSpec& pattern);

/// All satisfying occurrences in lexicographic order; empty iff avoids.
std::vector<Occurrence> find_occurrences(const Permutation& target, const PatternSpec& pattern);

/// The equivalent mesh pattern: classic maps to an empty region set, index
/// adjacencies become fully shaded columns, value adjacencies fully shaded
/// rows, boxed to its box, consecutive via its implied adjacencies.
PatternSpec to_mesh(const PatternSpec& pattern);

} // namespace permforge

#endif
