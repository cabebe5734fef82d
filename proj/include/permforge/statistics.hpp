#ifndef PERMFORGE_STATISTICS_HPP
#define PERMFORGE_STATISTICS_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "permforge/permutation.hpp"

namespace permforge {

enum class StatisticKind { inversions, descents, ascents, excedances, major_index };

inline constexpr std::array<StatisticKind, 5> kAllStatistics = {
    StatisticKind::inversions, StatisticKind::descents, StatisticKind::ascents,
    StatisticKind::excedances, StatisticKind::major_index,
};

std::uint64_t statistic(const Permutation& p, StatisticKind kind);

std::string_view statistic_name(StatisticKind kind);
std::optional<StatisticKind> statistic_from_name(std::string_view name);

enum class Comparator { eq, ne, lt, le, gt, ge };

std::string_view comparator_name(Comparator op);
std::optional<Comparator> comparator_from_name(std::string_view name);

struct StatisticTerm {
    std::int64_t coefficient = 1;
    StatisticKind stat = StatisticKind::inversions;
    bool operator==(const StatisticTerm&) const = default;
};

/// Linear form over statistics compared against a constant, optionally in
/// modular arithmetic (nonnegative residue). With a modulus the comparator
/// must be eq or ne and the modulus must be >= 2.
struct StatisticPredicate {
    std::vector<StatisticTerm> terms;
    Comparator op = Comparator::eq;
    std::int64_t rhs = 0;
    std::optional<std::int64_t> modulus;
    bool operator==(const StatisticPredicate&) const = default;
};

/// Throws MalformedPredicate when the predicate violates its invariants.
void validate_predicate(const StatisticPredicate& pred);

/// The linear form's value in checked 64-bit signed arithmetic; throws
/// ArithmeticOverflow if it escapes range.
std::int64_t predicate_value(const Permutation& p, const StatisticPredicate& pred);

bool compare(Comparator op, std::int64_t lhs, std::int64_t rhs);

/// Throws MalformedPredicate / ArithmeticOverflow as above.
bool evaluate_predicate(const Permutation& p, const StatisticPredicate& pred);

} // namespace permforge

#endif
