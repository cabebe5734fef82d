#ifndef PERMFORGE_ERRORS_HPP
#define PERMFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace permforge {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input is not a bijection onto {1..n}: duplicate, out of range, or empty.
struct NotABijection : Error {
    using Error::Error;
};

/// Two sequences that must have equal length do not.
struct LengthMismatch : Error {
    using Error::Error;
};

/// An occurrence index falls outside the target, or is not strictly increasing.
struct IndexOutOfRange : Error {
    using Error::Error;
};

/// A statistic predicate violates its own invariants (empty terms, bad modulus).
struct MalformedPredicate : Error {
    using Error::Error;
};

/// A predicate value escaped 64-bit signed range during evaluation.
struct ArithmeticOverflow : Error {
    using Error::Error;
};

/// Model document is not well-formed (bad JSON, duplicate keys, bad UTF-8).
struct SyntaxError : Error {
    using Error::Error;
};

/// Model document is well-formed but semantically invalid.
struct ValidationError : Error {
    using Error::Error;
};

/// Brute-force enumeration refused: the requested length exceeds the hard cap.
struct LengthCapExceeded : Error {
    using Error::Error;
};

/// Solver aborted because the configured node budget was exhausted.
struct ResourceLimit : Error {
    using Error::Error;
};

} // namespace permforge

#endif
