#ifndef PERMFORGE_PERMUTATION_HPP
#define PERMFORGE_PERMUTATION_HPP

#include <span>
#include <string>
#include <vector>

#include "permforge/errors.hpp"

namespace permforge {

/// A permutation of {1..n}, one-indexed throughout: operator()(i) is the value
/// at position i for 1 <= i <= n. Immutable after construction, so instances
/// are safe to share across threads.
class Permutation {
public:
    /// Validates that `values` is a bijection onto {1..n}; throws NotABijection
    /// on duplicates, out-of-range entries, or empty input.
    explicit Permutation(std::vector<int> values);

    static Permutation identity(int n);

    /// Parses the text form: space-separated one-indexed values, e.g. "5 2 1 6 3 4".
    static Permutation from_text(const std::string& text);

    int size() const { return static_cast<int>(images_.size()); }

    /// Value at one-indexed position i.
    int operator()(int i) const { return images_[static_cast<size_t>(i) - 1]; }

    const std::vector<int>& images() const { return images_; }

    /// q with q(p(i)) = i for all i.
    Permutation inverse() const;

    std::string to_text() const;

    bool operator==(const Permutation&) const = default;
    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

/// Access to a permutation under the padded boundary convention:
/// padded(0) = 0, padded(n+1) = n+1, padded(i) = p(i) otherwise.
class PaddedView {
public:
    explicit PaddedView(const Permutation& base) : base_(&base) {}

    int operator()(int i) const {
        if (i == 0) return 0;
        if (i == base_->size() + 1) return base_->size() + 1;
        return (*base_)(i);
    }

    int size() const { return base_->size(); }

private:
    const Permutation* base_;
};

/// Strictly increasing one-indexed positions into a target permutation.
using Occurrence = std::vector<int>;

/// True iff the two equal-length sequences of distinct entries compare
/// identically at every index pair. Throws LengthMismatch.
bool order_isomorphic(std::span<const int> a, std::span<const int> b);

/// The unique permutation order-isomorphic to `values` (its flattening).
/// Entries must be distinct and nonempty.
Permutation flatten(std::span<const int> values);

} // namespace permforge

#endif
