#pragma once

#include <stdexcept>
#include <string>

namespace blockrecon {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A structure or message was built with parameters that violate its contract
/// (width mismatch, incompatible tables, zero element count, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two structures that must share geometry (cell count, k, widths, seed) do not.
class ParameterMismatch : public Error {
public:
    using Error::Error;
};

/// Bytes on the wire could not be parsed, or parsed into an inconsistent value.
class MalformedMessage : public Error {
public:
    using Error::Error;
};

} // namespace blockrecon
