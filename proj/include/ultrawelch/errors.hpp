#pragma once

#include <stdexcept>
#include <string>

namespace ultrawelch {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed textual input (JSON documents, rational literals, exponent keys).
class ParseError : public Error {
public:
    using Error::Error;
};

// An operation precondition was not met (non-unital config, k > n, empty list, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A bound variant or scalar operation was requested on an incompatible backend.
class BackendMismatchError : public Error {
public:
    using Error::Error;
};

// Matrix entries outside Q where constant rationals are required.
class NonRationalEntryError : public Error {
public:
    using Error::Error;
};

// Desk-scale resource guard tripped (symmetric power dimension, search budget setup).
class ResourceError : public Error {
public:
    using Error::Error;
};

// Division the scalar domain does not support (general Laurent divisor, |0| divisor).
class DivisionError : public Error {
public:
    using Error::Error;
};

} // namespace ultrawelch
