#ifndef PERMFORGE_PROPERTIES_HPP
#define PERMFORGE_PROPERTIES_HPP

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "permforge/permutation.hpp"

namespace permforge {

enum class PropertyKind {
    simple,
    plus_decomposable,
    minus_decomposable,
    blockwise_simple,
    derangement,
    nonderangement,
    involution,
    parity,
};

inline constexpr std::array<PropertyKind, 8> kAllProperties = {
    PropertyKind::simple,          PropertyKind::plus_decomposable,
    PropertyKind::minus_decomposable, PropertyKind::blockwise_simple,
    PropertyKind::derangement,     PropertyKind::nonderangement,
    PropertyKind::involution,      PropertyKind::parity,
};

/// Contiguous index range [start, end] whose value set is contiguous.
struct Interval {
    int start = 0;
    int end = 0;
    auto operator<=>(const Interval&) const = default;
};

/// All intervals of length >= 2 and < n, sorted by (start, end). A permutation
/// is simple exactly when this list is empty.
std::vector<Interval> proper_intervals(const Permutation& p);

bool check_property(const Permutation& p, PropertyKind kind);

std::string_view property_name(PropertyKind kind);
std::optional<PropertyKind> property_from_name(std::string_view name);

} // namespace permforge

#endif
