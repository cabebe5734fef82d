#include <doctest.h>

#include <algorithm>
#include <cstdint>

#include "permforge/properties.hpp"

using namespace permforge;

namespace {

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
    std::vector<Permutation> all;
    do {
        all.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return all;
}

std::uint64_t count_with(int n, PropertyKind kind) {
    std::uint64_t count = 0;
    for (const Permutation& p : all_permutations(n)) {
        if (check_property(p, kind)) ++count;
    }
    return count;
}

std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

} // namespace

TEST_CASE("proper intervals of the worked examples") {
    const auto intervals = proper_intervals(Permutation({1, 6, 3, 2, 5, 4, 7}));
    CHECK(intervals == std::vector<Interval>{{1, 6}, {2, 6}, {2, 7}, {3, 4}, {3, 6}, {5, 6}});

    CHECK(proper_intervals(Permutation({2, 4, 6, 1, 3, 5})).empty());
    CHECK(proper_intervals(Permutation({1, 2})).empty());
    CHECK(proper_intervals(Permutation({1})).empty());

    // the two blocks of 521634 are its only proper intervals
    CHECK(proper_intervals(Permutation({5, 2, 1, 6, 3, 4})) ==
          std::vector<Interval>{{2, 3}, {5, 6}});
}

TEST_CASE("each property matches its worked example") {
    CHECK(check_property(Permutation({2, 4, 6, 1, 3, 5}), PropertyKind::simple));
    CHECK_FALSE(check_property(Permutation({5, 2, 1, 6, 3, 4}), PropertyKind::simple));

    CHECK(check_property(Permutation({2, 1, 3, 6, 5, 4}), PropertyKind::plus_decomposable));
    CHECK_FALSE(check_property(Permutation({5, 4, 6, 1, 2, 3}), PropertyKind::plus_decomposable));

    CHECK(check_property(Permutation({5, 4, 6, 1, 2, 3}), PropertyKind::minus_decomposable));
    CHECK_FALSE(check_property(Permutation({2, 1, 3, 6, 5, 4}), PropertyKind::minus_decomposable));

    CHECK(check_property(Permutation({4, 2, 5, 3, 7, 1, 6}), PropertyKind::blockwise_simple));
    CHECK_FALSE(check_property(Permutation({2, 4, 5, 1, 3}), PropertyKind::blockwise_simple));

    CHECK(check_property(Permutation({4, 3, 1, 2}), PropertyKind::derangement));
    CHECK_FALSE(check_property(Permutation({1, 2, 3, 4}), PropertyKind::derangement));

    CHECK(check_property(Permutation({2, 4, 3, 1}), PropertyKind::nonderangement));
    CHECK_FALSE(check_property(Permutation({4, 3, 2, 1}), PropertyKind::nonderangement));

    CHECK(check_property(Permutation({1, 2, 4, 3}), PropertyKind::involution));
    CHECK_FALSE(check_property(Permutation({2, 4, 3, 1}), PropertyKind::involution));

    CHECK(check_property(Permutation({3, 4, 1, 2}), PropertyKind::parity));
    CHECK_FALSE(check_property(Permutation({2, 4, 1, 3}), PropertyKind::parity));
}

TEST_CASE("singleton permutation edge cases") {
    const Permutation one({1});
    CHECK(check_property(one, PropertyKind::simple));
    CHECK(check_property(one, PropertyKind::blockwise_simple));
    CHECK_FALSE(check_property(one, PropertyKind::derangement));
    CHECK(check_property(one, PropertyKind::nonderangement));
    CHECK(check_property(one, PropertyKind::involution));
    CHECK(check_property(one, PropertyKind::parity));
    CHECK_FALSE(check_property(one, PropertyKind::plus_decomposable));
    CHECK_FALSE(check_property(one, PropertyKind::minus_decomposable));
}

TEST_CASE("derangement and nonderangement partition every length") {
    for (int n = 1; n <= 7; ++n) {
        for (const Permutation& p : all_permutations(n)) {
            CHECK(check_property(p, PropertyKind::derangement) !=
                  check_property(p, PropertyKind::nonderangement));
        }
    }
}

TEST_CASE("plus and minus decomposability exclude each other and simplicity") {
    for (int n = 2; n <= 7; ++n) {
        for (const Permutation& p : all_permutations(n)) {
            const bool plus = check_property(p, PropertyKind::plus_decomposable);
            const bool minus = check_property(p, PropertyKind::minus_decomposable);
            CHECK_FALSE((plus && minus));
            if (n >= 3 && (plus || minus)) {
                CHECK_FALSE(check_property(p, PropertyKind::simple));
            }
        }
    }
}

TEST_CASE("every simple permutation of lengths 4 to 8 is blockwise simple") {
    for (int n = 4; n <= 8; ++n) {
        for (const Permutation& p : all_permutations(n)) {
            if (check_property(p, PropertyKind::simple)) {
                CHECK(check_property(p, PropertyKind::blockwise_simple));
            }
        }
    }
}

TEST_CASE("property counts from exhaustive sweeps") {
    CHECK(count_with(4, PropertyKind::derangement) == 9);

    const std::uint64_t involutions[] = {1, 2, 4, 10, 26};
    for (int n = 1; n <= 5; ++n) {
        CHECK(count_with(n, PropertyKind::involution) == involutions[n - 1]);
    }

    CHECK(count_with(3, PropertyKind::simple) == 0);
    CHECK(count_with(4, PropertyKind::simple) == 2);

    for (int n = 1; n <= 7; ++n) {
        const std::uint64_t expected = factorial((n + 1) / 2) * factorial(n / 2);
        CHECK(count_with(n, PropertyKind::parity) == expected);
    }
}

TEST_CASE("property names round-trip") {
    for (PropertyKind kind : kAllProperties) {
        CHECK(property_from_name(property_name(kind)) == kind);
    }
    CHECK_FALSE(property_from_name("not_a_property").has_value());
}
