#pragma once

#include <stdexcept>
#include <string>

namespace rsg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Parameters are valid but the request cannot be met (bracket failure, desk envelope).
struct InfeasibleError : Error {
    using Error::Error;
};

struct SingularSequenceError : Error {
    using Error::Error;
};

struct RejectionExhausted : Error {
    using Error::Error;
};

struct ResourceError : Error {
    using Error::Error;
};

[[noreturn]] inline void domain_fail(const std::string& what) { throw DomainError(what); }

}  // namespace rsg
