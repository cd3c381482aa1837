#pragma once

#include <stdexcept>
#include <string>

namespace sykclt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different ambient spaces (mismatched n).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A precondition on a scalar argument was violated.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// The requested computation exceeds a configured size guard.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// A numerical post-condition (Hermiticity, accuracy, ...) failed.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A configuration document does not match the published schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace sykclt
