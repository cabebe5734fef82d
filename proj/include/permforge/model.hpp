#ifndef PERMFORGE_MODEL_HPP
#define PERMFORGE_MODEL_HPP

#include <string>
#include <variant>
#include <vector>

#include "permforge/patterns.hpp"
#include "permforge/properties.hpp"
#include "permforge/statistics.hpp"

namespace permforge {

struct PatternConstraint {
    PatternSpec pattern;
    Mode mode = Mode::contain;
    bool operator==(const PatternConstraint&) const = default;
};

struct PropertyConstraint {
    PropertyKind kind = PropertyKind::simple;
    bool negate = false;
    bool operator==(const PropertyConstraint&) const = default;
};

struct StatisticConstraint {
    StatisticPredicate pred;
    bool operator==(const StatisticConstraint&) const = default;
};

using Constraint = std::variant<PatternConstraint, PropertyConstraint, StatisticConstraint>;

/// A target length, a conjunction of constraints, and the statistics to
/// report per solution.
struct Model {
    int length = 1;
    std::vector<Constraint> constraints;
    std::vector<StatisticKind> emit;
    bool operator==(const Model&) const = default;
};

/// Leaf evaluation of a single constraint against a complete permutation.
bool satisfies(const Permutation& p, const Constraint& c);

/// True iff every constraint of the model holds. The permutation length must
/// equal the model length.
bool satisfies_all(const Permutation& p, const Model& m);

/// Throws ValidationError when the model violates its invariants (length < 1,
/// pattern base longer than 64, malformed predicate).
void validate_model(const Model& m);

/// Parses the JSON model document. Throws SyntaxError on malformed input
/// (including duplicate keys and invalid UTF-8) and ValidationError on
/// well-formed documents with invalid content; both carry a location hint.
Model parse_model(const std::string& text);

/// Canonical JSON document; parse_model(serialize_model(m)) == m.
std::string serialize_model(const Model& m);

/// One-line human description of a constraint, e.g. "avoid classic 1 3 2 4".
std::string describe(const Constraint& c);

} // namespace permforge

#endif
