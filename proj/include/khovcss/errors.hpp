#pragma once

#include <stdexcept>
#include <string>

namespace khovcss {

// Malformed combinatorial data (edge counts, bad tuples, bad files).
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& m) : std::runtime_error(m) {}
};

// Caller violated an operation contract (unpointed diagram, bad range, ...).
struct PreconditionError : std::invalid_argument {
    explicit PreconditionError(const std::string& m) : std::invalid_argument(m) {}
};

// Requested object exceeds configured size caps.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& m) : std::runtime_error(m) {}
};

// Internal consistency violation detected at runtime (d^2 != 0, non chain map).
struct IntegrityError : std::runtime_error {
    explicit IntegrityError(const std::string& m) : std::runtime_error(m) {}
};

// Unparseable or unsupported file format.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& m) : std::runtime_error(m) {}
};

} // namespace khovcss
