#pragma once

#include <stdexcept>
#include <string>

namespace ctxmem {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vectors or snapshots whose dimensions disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A named context, instance, or label that does not exist.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Malformed input: bad parameters, schema violations, invalid scripts.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Operation not allowed in the current state (e.g. untrained network,
/// observation outside the short-term window).
class StateError : public Error {
public:
    using Error::Error;
};

}  // namespace ctxmem
