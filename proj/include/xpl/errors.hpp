#pragma once

#include <stdexcept>
#include <string>

namespace xpl {

// Base of every recoverable checker error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed user input: unparsable text, invalid models or formulas.
class InputError : public Error {
public:
    using Error::Error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
        : InputError(format(msg, line, column)), line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        if (line == 0) return msg;
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
    }
    std::size_t line_, column_;
};

class InvalidModel : public InputError {
public:
    using InputError::InputError;
};

class IllFormedFormula : public InputError {
public:
    using InputError::InputError;
};

class InvalidDistribution : public InputError {
public:
    using InputError::InputError;
};

class InconsistentExitIndexing : public InputError {
public:
    using InputError::InputError;
};

class MixedSignBlock : public InputError {
public:
    using InputError::InputError;
};

// A DNF expansion or a separability traversal grew past its configured budget.
class SizeBudgetExceeded : public Error {
public:
    using Error::Error;
};

// A strongly connected group of equations was generated by both least and
// greatest fixed-point binders.
class MixedSignStratum : public Error {
public:
    using Error::Error;
};

// A nested probabilistic threshold could not be decided within the margin.
class NestedUnknown : public Error {
public:
    using Error::Error;
};

// Oracle enumeration exceeded its scheduler / tree budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace xpl
