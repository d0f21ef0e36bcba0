#pragma once

#include <stdexcept>
#include <string>

namespace mwk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// mixing formal and concrete units, or units from different backends
struct KindError : Error {
    using Error::Error;
};

// normalize exceeded the configured term/step budget
struct ResourceLimit : Error {
    using Error::Error;
};

// hk2 witness search exceeded the basis cap
struct BasisBound : Error {
    using Error::Error;
};

// operation applied outside its homogeneity precondition
struct DegreeError : Error {
    using Error::Error;
};

// unsupported field or out-of-range backend parameter
struct BackendError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t pos;
    ParseError(std::size_t p, const std::string& msg)
        : Error(msg + " (at position " + std::to_string(p) + ")"), pos(p) {}
};

} // namespace mwk
