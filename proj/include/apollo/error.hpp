#pragma once

#include <stdexcept>
#include <string>

namespace apollo {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checked integer arithmetic exceeded the signed 128-bit range.
struct OverflowError : Error {
    using Error::Error;
};

// Caller handed us something outside an operation's contract.
struct InvalidInputError : Error {
    using Error::Error;
};

// An internal consistency check failed; results cannot be trusted.
struct InvariantError : Error {
    using Error::Error;
};

// A configured cap (memory, elements, iterations) was exceeded.
struct ResourceError : Error {
    using Error::Error;
};

// Floating-point computation degenerated (singular matrix, non-finite value).
struct NumericError : Error {
    using Error::Error;
};

}  // namespace apollo
