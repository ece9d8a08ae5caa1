#pragma once

#include <stdexcept>
#include <string>

namespace episcreen {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A domain value violates its construction invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A scenario file, CSV input, or command-line configuration is malformed.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Integration produced NaN/inf or a compartment below the clamp tolerance;
/// usually means the step size is too large for the given rates.
class NonFiniteStateError : public Error {
public:
    using Error::Error;
};

/// PPV is 0/0: zero prevalence combined with perfect specificity.
class DegeneratePpvError : public Error {
public:
    using Error::Error;
};

/// The baseline prevalence resolved to zero, so PPV ratios are undefined.
class InvalidBaselineError : public Error {
public:
    using Error::Error;
};

/// No serial-test count within the search cap reaches the target PPV.
class NotReachableError : public Error {
public:
    using Error::Error;
};

/// The final-size equation has no admissible root.
class NoRootError : public Error {
public:
    using Error::Error;
};

} // namespace episcreen
