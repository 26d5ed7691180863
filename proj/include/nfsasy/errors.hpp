#pragma once

#include <stdexcept>
#include <string>

namespace nfsasy {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Constant term of a series is not invertible in its ring.
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two scaled terms cannot be combined (irrational scale ratio or bad log-power gap).
struct IncompatibleScales : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A coefficient was requested beyond the order the inputs justify.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nfsasy
