#pragma once

#include <stdexcept>
#include <string>

namespace homdom {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (bad parameters, wrong graph family).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed text input (graph6, JSON, rationals).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A configured resource ceiling was hit. The computation is abandoned rather
/// than returning a partial number.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

} // namespace homdom
