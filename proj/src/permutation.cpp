#include "permforge/permutation.hpp"

#include <algorithm>
#include <sstream>

namespace permforge {

Permutation::Permutation(std::vector<int> values) : images_(std::move(values)) {
    if (images_.empty()) {
        throw NotABijection("permutation must have at least one entry");
    }
    const int n = size();
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : images_) {
        if (v < 1 || v > n) {
            throw NotABijection("value " + std::to_string(v) + " outside 1.." + std::to_string(n));
        }
        if (seen[static_cast<size_t>(v)]) {
            throw NotABijection("value " + std::to_string(v) + " appears more than once");
        }
        seen[static_cast<size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = i + 1;
    return Permutation(std::move(v));
}

Permutation Permutation::from_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> values;
    int v = 0;
    while (in >> v) values.push_back(v);
    if (!in.eof()) {
        throw NotABijection("permutation text contains a non-integer token");
    }
    return Permutation(std::move(values));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 1; i <= size(); ++i) {
        inv[static_cast<size_t>((*this)(i)) - 1] = i;
    }
    return Permutation(std::move(inv));
}

std::string Permutation::to_text() const {
    std::string out;
    for (size_t i = 0; i < images_.size(); ++i) {
        if (i > 0) out += ' ';
        out += std::to_string(images_[i]);
    }
    return out;
}

bool order_isomorphic(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) {
        throw LengthMismatch("sequences differ in length: " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    }
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = i + 1; j < a.size(); ++j) {
            if ((a[i] < a[j]) != (b[i] < b[j])) return false;
        }
    }
    return true;
}

Permutation flatten(std::span<const int> values) {
    std::vector<size_t> order(values.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t x, size_t y) { return values[x] < values[y]; });
    std::vector<int> ranks(values.size());
    for (size_t r = 0; r < order.size(); ++r) {
        ranks[order[r]] = static_cast<int>(r) + 1;
    }
    return Permutation(std::move(ranks));
}

} // namespace permforge
