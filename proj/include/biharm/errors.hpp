#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biharm {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Expression syntax error; `offset` is the byte position in the source text.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

/// Evaluation outside a function's domain (ln of nonpositive, atanh at |x|>=1, ...).
struct DomainError : Error {
    using Error::Error;
};

/// A constructed object violates a contract (pole conditions, dimension counts, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// Numerical failure at run time (blow-up, no bracket, step underflow, ...).
struct NumericalError : Error {
    using Error::Error;
};

}  // namespace biharm
