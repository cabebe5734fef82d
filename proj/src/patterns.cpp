#include "permforge/patterns.hpp"

#include <algorithm>

namespace permforge {

namespace {

std::vector<int> normalize_adjacencies(std::vector<int> adj, int k, const char* what) {
    for (int a : adj) {
        if (a < 0 || a > k) {
            throw ValidationError(std::string(what) + " entry " + std::to_string(a) +
                                  " outside 0.." + std::to_string(k));
        }
    }
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    return adj;
}

std::vector<Cell> normalize_regions(std::vector<Cell> regions, int k) {
    for (const Cell& c : regions) {
        if (c.x < 0 || c.x > k || c.y < 0 || c.y > k) {
            throw ValidationError("region (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                                  ") outside 0.." + std::to_string(k) + " square");
        }
    }
    std::sort(regions.begin(), regions.end());
    regions.erase(std::unique(regions.begin(), regions.end()), regions.end());
    return regions;
}

// Padded inverse of the base: slot y in 0..k+1 holds the position of value y,
// with the conventions inv[0] = 0 and inv[k+1] = k+1.
std::vector<int> padded_inverse(const Permutation& base) {
    const int k = base.size();
    std::vector<int> inv(static_cast<size_t>(k) + 2);
    inv[0] = 0;
    inv[static_cast<size_t>(k) + 1] = k + 1;
    for (int i = 1; i <= k; ++i) inv[static_cast<size_t>(base(i))] = i;
    return inv;
}

// Full-condition occurrence search shared by contains / find_occurrences /
// match_at. Indices are chosen left to right; partial order isomorphism and
// index adjacencies prune as the tuple grows, value adjacencies and region
// emptiness are checked on complete tuples.
class Matcher {
public:
    Matcher(const Permutation& target, const PatternSpec& pattern)
        : target_(target),
          base_(pattern.base()),
          base_inv_(padded_inverse(pattern.base())),
          adjacencies_(pattern.effective_index_adjacencies()),
          value_adjacencies_(pattern.value_adjacencies()),
          regions_(pattern.effective_regions()),
          n_(target.size()),
          k_(pattern.length()),
          occ_(static_cast<size_t>(pattern.length())) {}

    // Runs the search; returns true as soon as `visit` returns true.
    template <typename Visit>
    bool search(Visit&& visit) {
        if (k_ > n_) return false;
        return extend(1, std::forward<Visit>(visit));
    }

    // Full condition at a fixed tuple, used by match_at.
    bool accepts(const Occurrence& occ) {
        for (int t = 1; t <= k_; ++t) {
            occ_[static_cast<size_t>(t) - 1] = occ[static_cast<size_t>(t) - 1];
            for (int s = 1; s < t; ++s) {
                if (!iso_pair(s, t)) return false;
            }
        }
        return adjacent_ok() && complete_ok();
    }

private:
    bool iso_pair(int s, int t) const {
        const int is = occ_[static_cast<size_t>(s) - 1];
        const int it = occ_[static_cast<size_t>(t) - 1];
        return (base_(s) < base_(t)) == (target_(is) < target_(it));
    }

    bool adjacency_required_before(int t) const {
        // adjacency a = t-1 links i_{t-1} and i_t
        return std::binary_search(adjacencies_.begin(), adjacencies_.end(), t - 1);
    }

    bool adjacent_ok() const {
        for (int a : adjacencies_) {
            const int lo = a == 0 ? 0 : occ_[static_cast<size_t>(a) - 1];
            const int hi = a == k_ ? n_ + 1 : occ_[static_cast<size_t>(a)];
            if (hi != lo + 1) return false;
        }
        return true;
    }

    int occurrence_value(int y) const {
        // value of the occurrence element playing pattern value y, padded
        if (y == 0) return 0;
        if (y == k_ + 1) return n_ + 1;
        return target_(occ_[static_cast<size_t>(base_inv_[static_cast<size_t>(y)]) - 1]);
    }

    int column_bound(int x) const {
        if (x == 0) return 0;
        if (x == k_ + 1) return n_ + 1;
        return occ_[static_cast<size_t>(x) - 1];
    }

    bool complete_ok() const {
        for (int b : value_adjacencies_) {
            if (occurrence_value(b + 1) != occurrence_value(b) + 1) return false;
        }
        for (const Cell& c : regions_) {
            const int lo = column_bound(c.x);
            const int hi = column_bound(c.x + 1);
            const int vlo = occurrence_value(c.y);
            const int vhi = occurrence_value(c.y + 1);
            for (int q = lo + 1; q < hi; ++q) {
                const int v = target_(q);
                if (vlo < v && v < vhi) return false;
            }
        }
        return true;
    }

    template <typename Visit>
    bool extend(int t, Visit&& visit) {
        int lo = t == 1 ? 1 : occ_[static_cast<size_t>(t) - 2] + 1;
        int hi = n_ - (k_ - t);
        if (adjacency_required_before(t)) {
            // i_t = i_{t-1} + 1, and i_1 = 1 when 0 is an adjacency
            hi = lo;
        }
        for (int i = lo; i <= hi; ++i) {
            occ_[static_cast<size_t>(t) - 1] = i;
            bool consistent = true;
            for (int s = 1; s < t && consistent; ++s) consistent = iso_pair(s, t);
            if (!consistent) continue;
            if (t == k_) {
                if (std::binary_search(adjacencies_.begin(), adjacencies_.end(), k_) && i != n_) {
                    continue;
                }
                if (complete_ok() && visit(occ_)) return true;
            } else {
                if (extend(t + 1, visit)) return true;
            }
        }
        return false;
    }

    const Permutation& target_;
    const Permutation& base_;
    std::vector<int> base_inv_;
    std::vector<int> adjacencies_;
    std::vector<int> value_adjacencies_;
    std::vector<Cell> regions_;
    int n_;
    int k_;
    Occurrence occ_;
};

void validate_occurrence(const Permutation& target, const Permutation& base, const Occurrence& occ) {
    if (occ.size() != static_cast<size_t>(base.size())) {
        throw LengthMismatch("occurrence has " + std::to_string(occ.size()) + " indices, pattern has " +
                             std::to_string(base.size()));
    }
    int prev = 0;
    for (int i : occ) {
        if (i < 1 || i > target.size()) {
            throw IndexOutOfRange("occurrence index " + std::to_string(i) + " outside 1.." +
                                  std::to_string(target.size()));
        }
        if (i <= prev) {
            throw IndexOutOfRange("occurrence indices must be strictly increasing");
        }
        prev = i;
    }
}

} // namespace

PatternSpec::PatternSpec(PatternVariant variant, Permutation base)
    : variant_(variant), base_(std::move(base)) {}

PatternSpec PatternSpec::classic(Permutation base) {
    return PatternSpec(PatternVariant::classic, std::move(base));
}

PatternSpec PatternSpec::vincular(Permutation base, std::vector<int> adjacencies) {
    const int k = base.size();
    PatternSpec p(PatternVariant::vincular, std::move(base));
    p.index_adjacencies_ = normalize_adjacencies(std::move(adjacencies), k, "adjacency");
    return p;
}

PatternSpec PatternSpec::bivincular(Permutation base, std::vector<int> index_adjacencies,
                                    std::vector<int> value_adjacencies) {
    const int k = base.size();
    PatternSpec p(PatternVariant::bivincular, std::move(base));
    p.index_adjacencies_ = normalize_adjacencies(std::move(index_adjacencies), k, "index adjacency");
    p.value_adjacencies_ = normalize_adjacencies(std::move(value_adjacencies), k, "value adjacency");
    return p;
}

PatternSpec PatternSpec::mesh(Permutation base, std::vector<Cell> regions) {
    const int k = base.size();
    PatternSpec p(PatternVariant::mesh, std::move(base));
    p.regions_ = normalize_regions(std::move(regions), k);
    return p;
}

PatternSpec PatternSpec::boxed(Permutation base) {
    return PatternSpec(PatternVariant::boxed, std::move(base));
}

PatternSpec PatternSpec::consecutive(Permutation base) {
    return PatternSpec(PatternVariant::consecutive, std::move(base));
}

std::vector<int> PatternSpec::effective_index_adjacencies() const {
    if (variant_ == PatternVariant::consecutive) {
        std::vector<int> all;
        for (int a = 1; a <= length() - 1; ++a) all.push_back(a);
        return all;
    }
    return index_adjacencies_;
}

std::vector<Cell> PatternSpec::effective_regions() const {
    if (variant_ == PatternVariant::boxed) {
        std::vector<Cell> box;
        for (int x = 1; x <= length() - 1; ++x) {
            for (int y = 1; y <= length() - 1; ++y) box.push_back({x, y});
        }
        return box;
    }
    return regions_;
}

std::string_view variant_name(PatternVariant v) {
    switch (v) {
        case PatternVariant::classic: return "classic";
        case PatternVariant::vincular: return "vincular";
        case PatternVariant::bivincular: return "bivincular";
        case PatternVariant::mesh: return "mesh";
        case PatternVariant::boxed: return "boxed";
        case PatternVariant::consecutive: return "consecutive";
    }
    return "?";
}

bool classic_match_at(const Permutation& target, const Permutation& base, const Occurrence& occ) {
    validate_occurrence(target, base, occ);
    std::vector<int> sub;
    sub.reserve(occ.size());
    for (int i : occ) sub.push_back(target(i));
    return order_isomorphic(sub, base.images());
}

bool match_at(const Permutation& target, const PatternSpec& pattern, const Occurrence& occ) {
    validate_occurrence(target, pattern.base(), occ);
    Matcher m(target, pattern);
    return m.accepts(occ);
}

bool contains(const Permutation& target, const PatternSpec& pattern) {
    Matcher m(target, pattern);
    return m.search([](const Occurrence&) { return true; });
}

bool avoids(const Permutation& target, const PatternSpec& pattern) {
    return !contains(target, pattern);
}

std::vector<Occurrence> find_occurrences(const Permutation& target, const PatternSpec& pattern) {
    std::vector<Occurrence> found;
    Matcher m(target, pattern);
    m.search([&](const Occurrence& occ) {
        found.push_back(occ);
        return false;
    });
    return found;
}

PatternSpec to_mesh(const PatternSpec& pattern) {
    const int k = pattern.length();
    std::vector<Cell> cells = pattern.effective_regions();
    for (int a : pattern.effective_index_adjacencies()) {
        for (int y = 0; y <= k; ++y) cells.push_back({a, y});
    }
    for (int b : pattern.value_adjacencies()) {
        for (int x = 0; x <= k; ++x) cells.push_back({x, b});
    }
    return PatternSpec::mesh(pattern.base(), std::move(cells));
}

} // namespace permforge
