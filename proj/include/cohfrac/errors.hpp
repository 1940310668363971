#pragma once

#include <stdexcept>
#include <string>

namespace cohfrac {

// Root of everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// State-validation failures. Messages name the violated invariant and the
// worst offending magnitude so callers can report them verbatim.
class ValidationError : public Error {
public:
    using Error::Error;
};

class NotHermitian : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class TraceNotOne : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotPositive : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotNormalized : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DimensionTooLarge : public Error {
public:
    using Error::Error;
};

class ParamOutOfRange : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class IncompleteKraus : public Error {
public:
    using Error::Error;
};

class UnsupportedKind : public Error {
public:
    using Error::Error;
};

class NotApplicable : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace cohfrac
