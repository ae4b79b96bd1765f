#pragma once

#include <stdexcept>
#include <string>

namespace travesty {

// Domain errors map to CLI exit code 1; they carry a human-readable reason.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid model data (pmf mass, negative probabilities, bad CSV rows, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Caller passed arguments outside an operation's domain.
struct ArgumentError : Error {
    using Error::Error;
};

// No (u, q) realization exists for the requested pair.
struct SynthesisError : Error {
    using Error::Error;
};

// A Bayes update was requested on a zero-probability outcome.
struct UndefinedPosteriorError : Error {
    using Error::Error;
};

// Malformed input stream; carries the 1-based line number when known.
struct ParseError : Error {
    explicit ParseError(const std::string& what, long line = -1)
        : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what), line_number(line) {}
    long line_number;
};

namespace detail {
[[noreturn]] inline void internal_check_failed(const char* expr, const char* file, int line) {
    throw std::logic_error(std::string("internal invariant violated: ") + expr + " at " + file + ":" +
                           std::to_string(line));
}
}  // namespace detail

}  // namespace travesty

// Loud failure for conditions that are theorems of the model; a trip here is a bug,
// not a user error, so it is not a travesty::Error.
#define TRAVESTY_INTERNAL_CHECK(expr) \
    ((expr) ? (void)0 : ::travesty::detail::internal_check_failed(#expr, __FILE__, __LINE__))
