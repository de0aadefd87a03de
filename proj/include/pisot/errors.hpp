#pragma once

#include <stdexcept>
#include <string>

namespace pisot {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (polynomials, substitutions, CLI arguments).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// A certified comparison stayed indecisive at the precision cap.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& what) : Error(what) {}
};

// A configurable resource budget (states, points, word length) was exceeded.
struct BudgetError : Error {
    explicit BudgetError(const std::string& what) : Error(what) {}
};

// An operation was called outside its documented domain.
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

} // namespace pisot
