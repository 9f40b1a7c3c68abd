#pragma once

#include <stdexcept>
#include <string>

namespace gridbench {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfBounds : Error {
    using Error::Error;
};
struct ShapeMismatch : Error {
    using Error::Error;
};
struct VariableOutOfRange : Error {
    using Error::Error;
};
struct GenerationExhausted : Error {
    using Error::Error;
};
struct ConstraintViolated : Error {
    using Error::Error;
};
struct AmbiguousCategory : Error {
    using Error::Error;
};
struct NoUniquePath : Error {
    using Error::Error;
};
struct DegenerateRay : Error {
    using Error::Error;
};
struct UnknownFamily : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct InvariantViolation : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};
struct UnjoinableRecord : Error {
    using Error::Error;
};
struct LayoutUnsupported : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct AuthError : Error {
    using Error::Error;
};

struct TransportError : Error {
    TransportError(std::string kind_, int attempts_, const std::string& what_)
        : Error(what_), kind(std::move(kind_)), attempts(attempts_) {}
    std::string kind;
    int attempts = 0;
};

}  // namespace gridbench
