#pragma once

#include <stdexcept>
#include <string>

namespace hapseh {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (x <= 0 for K_n, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid or inconsistent model parameters.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Malformed scenario/configuration input.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A closed form produced a value outside its admissible range by more than
/// the rounding budget allows.
class NumericInstabilityError : public Error {
public:
    NumericInstabilityError(const std::string& what, double raw_value)
        : Error(what), raw_value_(raw_value) {}

    double raw_value() const noexcept { return raw_value_; }

private:
    double raw_value_;
};

/// Adaptive quadrature did not reach the requested tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double estimate, double error_estimate)
        : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

    double estimate() const noexcept { return estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

namespace detail {

inline void require(bool cond, const char* what) {
    if (!cond) throw ParameterError(what);
}

} // namespace detail
} // namespace hapseh
