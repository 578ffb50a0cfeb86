#pragma once

#include <stdexcept>
#include <string>

namespace nbcqi {

/// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Lower central series fails to reach zero within dim steps.
struct NonNilpotentError : Error {
    explicit NonNilpotentError(const std::string& msg) : Error(msg) {}
};

/// An eigenvalue falls outside the supported algebraic degree bound
/// (or is a complex pair we cannot isolate exactly).
struct UnsupportedEigenvalueError : Error {
    explicit UnsupportedEigenvalueError(const std::string& msg) : Error(msg) {}
};

/// Two bracket expressions for the same basis vector demand different images.
struct InconsistentExtensionError : Error {
    explicit InconsistentExtensionError(const std::string& msg) : Error(msg) {}
};

/// |det| of an endomorphism is not a positive integer.
struct NonIntegerIndexError : Error {
    explicit NonIntegerIndexError(const std::string& msg) : Error(msg) {}
};

/// A growth space failed its exact bracket-closure verification.
struct SubalgebraClosureError : Error {
    explicit SubalgebraClosureError(const std::string& msg) : Error(msg) {}
};

/// The greedy chain construction could not reach a filtration-adapted basis.
struct AdaptedBasisError : Error {
    explicit AdaptedBasisError(const std::string& msg) : Error(msg) {}
};

/// A numeric fit had too few usable grid points.
struct DegenerateFitError : Error {
    explicit DegenerateFitError(const std::string& msg) : Error(msg) {}
};

/// Classification was requested on inputs violating the standing assumptions.
struct AssumptionViolationError : Error {
    explicit AssumptionViolationError(const std::string& msg) : Error(msg) {}
};

}  // namespace nbcqi
