#pragma once

#include <stdexcept>
#include <string>

namespace loadcast {

/// Base for every error raised by the library.  The CLI maps the three
/// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or parameters (bad granularity, n_rounds = 0, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input data that violates a documented precondition (malformed CSV,
/// all-null meter column, schema mismatch, empty selection, ...).
class DataError : public Error {
public:
    using Error::Error;
};

/// Internal invariant failed; indicates a bug rather than bad input.
class InvariantError : public Error {
public:
    using Error::Error;
};

}  // namespace loadcast
