#include "permforge/statistics.hpp"

namespace permforge {

std::uint64_t statistic(const Permutation& p, StatisticKind kind) {
    const int n = p.size();
    std::uint64_t count = 0;
    switch (kind) {
        case StatisticKind::inversions:
            for (int i = 1; i <= n; ++i) {
                for (int j = i + 1; j <= n; ++j) {
                    if (p(i) > p(j)) ++count;
                }
            }
            return count;
        case StatisticKind::descents:
            for (int i = 1; i < n; ++i) {
                if (p(i) > p(i + 1)) ++count;
            }
            return count;
        case StatisticKind::ascents:
            for (int i = 1; i < n; ++i) {
                if (p(i) < p(i + 1)) ++count;
            }
            return count;
        case StatisticKind::excedances:
            for (int i = 1; i <= n; ++i) {
                if (p(i) > i) ++count;
            }
            return count;
        case StatisticKind::major_index:
            for (int i = 1; i < n; ++i) {
                if (p(i) > p(i + 1)) count += static_cast<std::uint64_t>(i);
            }
            return count;
    }
    return count;
}

std::string_view statistic_name(StatisticKind kind) {
    switch (kind) {
        case StatisticKind::inversions: return "inversions";
        case StatisticKind::descents: return "descents";
        case StatisticKind::ascents: return "ascents";
        case StatisticKind::excedances: return "excedances";
        case StatisticKind::major_index: return "major_index";
    }
    return "?";
}

std::optional<StatisticKind> statistic_from_name(std::string_view name) {
    for (StatisticKind kind : kAllStatistics) {
        if (statistic_name(kind) == name) return kind;
    }
    return std::nullopt;
}

std::string_view comparator_name(Comparator op) {
    switch (op) {
        case Comparator::eq: return "eq";
        case Comparator::ne: return "ne";
        case Comparator::lt: return "lt";
        case Comparator::le: return "le";
        case Comparator::gt: return "gt";
        case Comparator::ge: return "ge";
    }
    return "?";
}

std::optional<Comparator> comparator_from_name(std::string_view name) {
    for (Comparator op : {Comparator::eq, Comparator::ne, Comparator::lt, Comparator::le,
                          Comparator::gt, Comparator::ge}) {
        if (comparator_name(op) == name) return op;
    }
    return std::nullopt;
}

void validate_predicate(const StatisticPredicate& pred) {
    if (pred.terms.empty()) {
        throw MalformedPredicate("statistic predicate needs at least one term");
    }
    if (pred.modulus) {
        if (*pred.modulus < 2) {
            throw MalformedPredicate("modulus must be at least 2");
        }
        if (pred.op != Comparator::eq && pred.op != Comparator::ne) {
            throw MalformedPredicate("modular predicates support only eq and ne");
        }
    }
}

std::int64_t predicate_value(const Permutation& p, const StatisticPredicate& pred) {
    std::int64_t total = 0;
    for (const StatisticTerm& term : pred.terms) {
        const std::int64_t value = static_cast<std::int64_t>(statistic(p, term.stat));
        std::int64_t product = 0;
        if (__builtin_mul_overflow(term.coefficient, value, &product) ||
            __builtin_add_overflow(total, product, &total)) {
            throw ArithmeticOverflow("statistic predicate value exceeds 64-bit range");
        }
    }
    return total;
}

bool compare(Comparator op, std::int64_t lhs, std::int64_t rhs) {
    switch (op) {
        case Comparator::eq: return lhs == rhs;
        case Comparator::ne: return lhs != rhs;
        case Comparator::lt: return lhs < rhs;
        case Comparator::le: return lhs <= rhs;
        case Comparator::gt: return lhs > rhs;
        case Comparator::ge: return lhs >= rhs;
    }
    return false;
}

bool evaluate_predicate(const Permutation& p, const StatisticPredicate& pred) {
    validate_predicate(pred);
    std::int64_t value = predicate_value(p, pred);
    if (pred.modulus) {
        value %= *pred.modulus;
        if (value < 0) value += *pred.modulus;
    }
    return compare(pred.op, value, pred.rhs);
}

} // namespace permforge
