#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treeca {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text input that does not match the term or automaton grammar.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class MalformedContextError : public Error {
public:
    using Error::Error;
};

class AddressError : public Error {
public:
    using Error::Error;
};

// A tree or rule that disagrees with the ranked alphabet.
class RankError : public Error {
public:
    using Error::Error;
};

class UnknownStateError : public Error {
public:
    using Error::Error;
};

class BudgetError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Raised by operations that are only meaningful for path-closed languages.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace treeca
