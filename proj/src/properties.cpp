#include "permforge/properties.hpp"

#include <algorithm>

namespace permforge {

namespace {

bool is_simple(const Permutation& p) {
    const int n = p.size();
    for (int start = 1; start <= n; ++start) {
        int lo = p(start);
        int hi = p(start);
        for (int end = start + 1; end <= n; ++end) {
            lo = std::min(lo, p(end));
            hi = std::max(hi, p(end));
            const int len = end - start + 1;
            if (len == n) break;
            if (hi - lo + 1 == len) return false;
        }
    }
    return true;
}

bool is_plus_decomposable(const Permutation& p) {
    const int n = p.size();
    int prefix_max = 0;
    for (int sep = 1; sep <= n - 1; ++sep) {
        prefix_max = std::max(prefix_max, p(sep));
        // values 1..sep confined to the prefix iff its max is sep
        if (prefix_max == sep) return true;
    }
    return false;
}

bool is_minus_decomposable(const Permutation& p) {
    const int n = p.size();
    int prefix_min = n + 1;
    for (int sep = 1; sep <= n - 1; ++sep) {
        prefix_min = std::min(prefix_min, p(sep));
        if (prefix_min == n - sep + 1) return true;
    }
    return false;
}

// Sweeps every interval [start, end] of the permutation, the full range
// included, and rejects when some split point turns it into a 12 or 21
// arrangement of two blocks.
bool is_blockwise_simple(const Permutation& p) {
    const int n = p.size();
    std::vector<int> right_min(static_cast<size_t>(n) + 2);
    std::vector<int> right_max(static_cast<size_t>(n) + 2);
    for (int start = 1; start <= n; ++start) {
        int lo = p(start);
        int hi = p(start);
        for (int end = start + 1; end <= n; ++end) {
            lo = std::min(lo, p(end));
            hi = std::max(hi, p(end));
            if (hi - lo != end - start) continue;
            right_min[static_cast<size_t>(end) + 1] = n + 1;
            right_max[static_cast<size_t>(end) + 1] = 0;
            for (int q = end; q > start; --q) {
                right_min[static_cast<size_t>(q)] = std::min(right_min[static_cast<size_t>(q) + 1], p(q));
                right_max[static_cast<size_t>(q)] = std::max(right_max[static_cast<size_t>(q) + 1], p(q));
            }
            int left_min = n + 1;
            int left_max = 0;
            for (int middle = start; middle < end; ++middle) {
                left_min = std::min(left_min, p(middle));
                left_max = std::max(left_max, p(middle));
                if (left_max < right_min[static_cast<size_t>(middle) + 1]) return false;
                if (left_min > right_max[static_cast<size_t>(middle) + 1]) return false;
            }
        }
    }
    return true;
}

} // namespace

std::vector<Interval> proper_intervals(const Permutation& p) {
    const int n = p.size();
    std::vector<Interval> found;
    for (int start = 1; start <= n; ++start) {
        int lo = p(start);
        int hi = p(start);
        for (int end = start + 1; end <= n; ++end) {
            lo = std::min(lo, p(end));
            hi = std::max(hi, p(end));
            const int len = end - start + 1;
            if (len == n) break;
            if (hi - lo + 1 == len) found.push_back({start, end});
        }
    }
    return found;
}

bool check_property(const Permutation& p, PropertyKind kind) {
    const int n = p.size();
    switch (kind) {
        case PropertyKind::simple:
            return is_simple(p);
        case PropertyKind::plus_decomposable:
            return is_plus_decomposable(p);
        case PropertyKind::minus_decomposable:
            return is_minus_decomposable(p);
        case PropertyKind::blockwise_simple:
            return is_blockwise_simple(p);
        case PropertyKind::derangement:
            for (int i = 1; i <= n; ++i) {
                if (p(i) == i) return false;
            }
            return true;
        case PropertyKind::nonderangement:
            for (int i = 1; i <= n; ++i) {
                if (p(i) == i) return true;
            }
            return false;
        case PropertyKind::involution:
            for (int i = 1; i <= n; ++i) {
                if (p(p(i)) != i) return false;
            }
            return true;
        case PropertyKind::parity:
            for (int i = 1; i <= n; ++i) {
                if ((p(i) - i) % 2 != 0) return false;
            }
            return true;
    }
    return false;
}

std::string_view property_name(PropertyKind kind) {
    switch (kind) {
        case PropertyKind::simple: return "simple";
        case PropertyKind::plus_decomposable: return "plus_decomposable";
        case PropertyKind::minus_decomposable: return "minus_decomposable";
        case PropertyKind::blockwise_simple: return "blockwise_simple";
        case PropertyKind::derangement: return "derangement";
        case PropertyKind::nonderangement: return "nonderangement";
        case PropertyKind::involution: return "involution";
        case PropertyKind::parity: return "parity";
    }
    return "?";
}

std::optional<PropertyKind> property_from_name(std::string_view name) {
    for (PropertyKind kind : kAllProperties) {
        if (property_name(kind) == name) return kind;
    }
    return std::nullopt;
}

} // namespace permforge
