#pragma once

#include <stdexcept>
#include <string>

namespace circa {

/// Input has inconsistent dimensions (vector length, matrix shape, ...).
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/// A square solve was attempted on a singular matrix.
class SingularMatrixError : public std::domain_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::domain_error(what) {}
};

/// A documented precondition of an operation does not hold for the given input.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

/// An internal invariant failed; indicates a bug, never bad user input.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// Malformed text input (rational literals, JSON instance files).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace circa
