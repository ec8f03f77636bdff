#pragma once

#include <stdexcept>
#include <string>

namespace linkhom {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Division that was expected to be exact in Z[u^+-1] left a remainder.
// Callers that have a fallback (e.g. another column choice) catch this.
struct ExactDivisionError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

}  // namespace linkhom
