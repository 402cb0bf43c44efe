#pragma once

#include <stdexcept>
#include <string>

namespace ifol {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text, with a 1-based source position.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, int line, int column)
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A value violates the invariants of the node being built.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// Predicate used with the wrong number of arguments or never declared.
class SignatureError : public Error {
public:
    using Error::Error;
};

/// An atomic concept whose predicate has neither facts nor a grounding.
class MissingExtension : public Error {
public:
    using Error::Error;
};

/// Natural-language input outside the registered templates.
class NotParseable : public Error {
public:
    using Error::Error;
};

/// Nothing to render a predicate or form with.
class MissingTemplate : public Error {
public:
    using Error::Error;
};

}  // namespace ifol
