#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orbithull {

/// Malformed or ill-typed input (CLI exit code 1).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its domain (CLI exit code 2).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Some generator f of F moves v off its complex torus orbit.
class IncorViolation : public PreconditionError {
public:
    IncorViolation(std::size_t generator, const std::string& what)
        : PreconditionError(what), generator_(generator) {}
    std::size_t generator() const { return generator_; }

private:
    std::size_t generator_;
};

class DegenerateInput : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class CertificateError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Raised when two routes to the same quantity disagree.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace orbithull
