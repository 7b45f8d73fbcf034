#pragma once

#include <stdexcept>

namespace rigidity {

// Invalid parameter tuple; the message names the first violated constraint.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inconsistency that valid inputs cannot produce.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// A polynomial component is not homogeneous of its declared degree.
struct GradingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite-field enumeration would exceed the configured point cap.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parameter-space enumeration would exceed the configured tuple cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IOError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rigidity
