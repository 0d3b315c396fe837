#pragma once

#include <stdexcept>
#include <string>

namespace padicdyn {

/// Requested level exceeds the precision the input is known to.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

/// Input data is internally inconsistent (e.g. a claimed cycle is not one),
/// or a computed quantity violates an invariant the theory guarantees.
struct integrity_error : std::runtime_error {
    explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration or materialization would exceed the configured budget.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Arguments violate a documented precondition.
struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace padicdyn
