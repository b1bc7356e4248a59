#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polyfact {

/// Base class for every error thrown by the library.
class polyfact_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit together (matrix-vector, compose, concat, ...).
class dimension_error : public polyfact_error {
public:
    using polyfact_error::polyfact_error;
};

/// Input violates a documented precondition (duplicate sample points,
/// zero scale factor, invalid transversal, unknown transform name, ...).
class invalid_argument : public polyfact_error {
public:
    using polyfact_error::polyfact_error;
};

/// Text input could not be parsed. Carries the 1-based line number, or 0
/// when the failure is not tied to a line.
class parse_error : public polyfact_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : polyfact_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace polyfact
