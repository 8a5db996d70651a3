#pragma once

#include <stdexcept>
#include <string>

namespace mice {

/// Violated precondition of a library operation (mixed moduli, bad indices, ...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// A convention self-check failed at startup; the weight tables cannot be trusted.
struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mice
