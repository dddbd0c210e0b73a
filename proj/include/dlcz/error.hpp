#pragma once

#include <stdexcept>
#include <string>

namespace dlcz {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration document.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A configuration value violates a type invariant. `field()` names it
/// as `Type.field` (e.g. `Beam.waist`).
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& message)
        : Error(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Missing or unrecognised unit suffix on a dimensional quantity.
class UnitError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a model function.
class DomainError : public Error {
public:
    using Error::Error;
};

class EmptyChannelError : public Error {
public:
    using Error::Error;
};

class UnsortedInputError : public Error {
public:
    using Error::Error;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

class IntegrationError : public Error {
public:
    using Error::Error;
};

}  // namespace dlcz
