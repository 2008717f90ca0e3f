#pragma once

#include <stdexcept>
#include <string>

namespace emtime {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (dimension mismatch,
/// non-Hermitian generator, N < 2, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The physics is undefined for the requested parameters: a negative
/// dilation radicand, a nonpositive scale factor, a superluminal speed.
/// `term()` names the contribution responsible, when one can be singled out.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what, std::string term = {})
        : Error(what), term_(std::move(term)) {}

    const std::string& term() const noexcept { return term_; }

private:
    std::string term_;
};

/// Projection of a history state onto a clock reading has (numerically) zero
/// norm, so no conditional system state exists for that reading.
class UndefinedConditionalState : public DomainError {
public:
    UndefinedConditionalState(const std::string& what, long index)
        : DomainError(what, "clock projection"), index_(index) {}

    long index() const noexcept { return index_; }

private:
    long index_;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public Error {
public:
    using Error::Error;
};

} // namespace emtime
