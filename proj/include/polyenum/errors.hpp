#pragma once

#include <stdexcept>
#include <string>

namespace polyenum {

/**
 * Error taxonomy.
 *
 * Every failure that depends on the input data (rather than on caller
 * misuse) is reported through a subclass of Error so that callers can
 * map outcomes to exit codes without string matching.  Precondition
 * violations (zero denominators handed to normalize, pivoting on a zero
 * entry, out-of-range arguments) throw std::invalid_argument instead.
 */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Input text does not conform to the file grammar. */
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/** Structurally well-formed input that violates a semantic requirement. */
class ValidationError : public Error {
public:
    using Error::Error;
};

/** The feasible region is empty. */
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/** The feasible region is not a bounded polytope. */
class UnboundedError : public Error {
public:
    using Error::Error;
};

/** A canonical rational value does not fit the fixed-width representation. */
class OverflowError : public Error {
public:
    using Error::Error;
};

/** A wall-clock deadline expired before the run finished. */
class TimeoutError : public Error {
public:
    using Error::Error;
};

/** A configured memory or output cap was reached. */
class ResourceCapError : public Error {
public:
    using Error::Error;
};

/** An internal invariant failed; indicates a bug, not bad input. */
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace polyenum
