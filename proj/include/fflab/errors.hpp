#ifndef FFLAB_ERRORS_HPP
#define FFLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fflab {

/// Base class for everything thrown by this library.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input: bad JSON, schema violations, unsupported model kinds,
/// out-of-cap configuration. CLI maps these to exit code 2.
struct input_error : error {
    explicit input_error(const std::string& msg) : error(msg) {}
};

/// Domain errors of individual operations: inversion of zero, evaluation at a
/// pole, valuation of zero, unsupported (model, place) pairs.
struct math_error : error {
    explicit math_error(const std::string& msg) : error(msg) {}
};

/// A deterministic search ran out of its space (split locus, lambda scan).
/// Signals that the base field should be extended.
struct search_exhausted : error {
    explicit search_exhausted(const std::string& msg) : error(msg) {}
};

/// A theorem-backed invariant failed. These cannot fire on correct code and
/// valid instances; the CLI maps them to exit code 3 with a reproducer.
struct invariant_error : error {
    explicit invariant_error(const std::string& msg) : error(msg) {}
};

}  // namespace fflab

#endif
