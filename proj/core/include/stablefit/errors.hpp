#pragma once

#include <stdexcept>
#include <string>

namespace stablefit {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (parameter range, t <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Requested moment order has no closed form implemented.
class UnsupportedOrderError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The data do not determine an estimate (slope <= 0 when recovering sigma,
/// non-finite scale, ...).
class EstimationError : public Error {
public:
    using Error::Error;
};

/// All observations are identical; the ECF modulus is identically one.
class DegenerateSampleError : public EstimationError {
public:
    using EstimationError::EstimationError;
};

/// Moment matrix too ill-conditioned to be trusted (polynomial degree cap).
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Malformed simulation configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A run file names a key that does not exist.
class UnknownKeyError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

}  // namespace stablefit
