// errors.hpp — exception types shared across the library and CLI.

#pragma once

#include <stdexcept>
#include <string>

namespace zeno {

// A closed-form result landed outside the tolerated probability band, a
// bisection bracket failed to change sign, or a similar internal check
// tripped. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// An asymptotic formula was evaluated outside the regime where it applies
// (e.g. a negative radicand, or an estimate that lands below zero).
class OutOfRegimeError : public std::domain_error {
public:
    explicit OutOfRegimeError(const std::string& what) : std::domain_error(what) {}
};

// Requested an optimum that does not exist: lossless stages make the
// survival probability increase without bound in N.
class NoFiniteOptimumError : public std::domain_error {
public:
    explicit NoFiniteOptimumError(const std::string& what) : std::domain_error(what) {}
};

// Bad run configuration (unknown key, missing field, unparsable value).
// The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Output file could not be opened or written. CLI exit code 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zeno
