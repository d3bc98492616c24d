#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlg {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    enum class Kind { Syntax, UnknownIdentifier, VariableOutOfRange };

    ParseError(Kind kind, std::size_t offset, const std::string& what)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), kind_(kind), offset_(offset) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t offset() const noexcept { return offset_; }

private:
    Kind kind_;
    std::size_t offset_;
};

/// Evaluation left the real domain (log of nonpositive, division by zero, non-finite result).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Hessians do not commute: the gradient graph is not Lagrangian.
class NotCommuting : public Error {
public:
    using Error::Error;
};

/// Mean curvature above the minimality tolerance.
class NotMinimal : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// Hess u >= -C I fails at a point handed to a Lewy transform.
class BoundViolated : public Error {
public:
    using Error::Error;
};

class NegativeC : public Error {
public:
    using Error::Error;
};

/// Malformed graph definition file.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace mlg
