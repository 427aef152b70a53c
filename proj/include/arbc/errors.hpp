#pragma once

#include <stdexcept>
#include <string>

namespace arbc {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Lookup outside the tabulated range (no extrapolation is performed).
class OutOfRangeError : public Error {
public:
    using Error::Error;
};

// Invalid configuration or parameter set.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Operation applied to a state that does not admit it.
class StateError : public Error {
public:
    using Error::Error;
};

// Degenerate input for which the result is undefined (e.g. zero beam power).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// Required supply power exceeds the configured maximum.
class SupplyLimitError : public Error {
public:
    using Error::Error;
};

// No duty cycle in (0,1) realizes the requested conversion.
class UnreachableConversionError : public Error {
public:
    using Error::Error;
};

// Requested output power exceeds available input power.
class InsufficientPowerError : public Error {
public:
    using Error::Error;
};

// Reports being compared do not come from comparable scenarios.
class ComparisonError : public Error {
public:
    using Error::Error;
};

// Failure inside a session loop; message carries the offending tick.
class SessionError : public Error {
public:
    using Error::Error;
};

// File read/write failure; message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace arbc
