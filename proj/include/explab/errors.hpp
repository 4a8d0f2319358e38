#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace explab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(got)) {}
};

/// Requested spectral functionality on an operator without spectral data.
class UnsupportedOperator : public Error {
public:
    using Error::Error;
};

/// Vandermonde (or other) linear system is singular, e.g. confluent nodes.
class SingularSystem : public Error {
public:
    using Error::Error;
};

class InvalidCorrection : public Error {
public:
    using Error::Error;
};

/// A correction chain was asked for boundary traces or derivatives it was not given.
class InsufficientData : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, double residual)
        : Error(what + " (relative residual " + std::to_string(residual) + ")"),
          residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Non-finite state encountered while integrating.
class DivergenceError : public Error {
public:
    explicit DivergenceError(std::size_t step)
        : Error("non-finite state after step " + std::to_string(step)), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class UnknownName : public Error {
public:
    explicit UnknownName(const std::string& name) : Error("unknown name: " + name) {}
};

}  // namespace explab
