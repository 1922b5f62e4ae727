#ifndef LAMBDAH_ERROR_HPP
#define LAMBDAH_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lambdah {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// subst_const_H was handed a term with free variables.
class NotClosed : public Error {
 public:
  using Error::Error;
};

// A step rule was applied to a term whose head does not match the rule.
class RedexError : public Error {
 public:
  using Error::Error;
};

class NotATRedex : public RedexError {
 public:
  using RedexError::RedexError;
};

class NotAnIRedex : public RedexError {
 public:
  using RedexError::RedexError;
};

class NotAJRedex : public RedexError {
 public:
  using RedexError::RedexError;
};

// More consecutive I/J-steps than the cap allows. I- and J-reduction are
// finite, so this always indicates a bug.
class AuxCapExceeded : public Error {
 public:
  using Error::Error;
};

// An E-image that matches none of the three admissible shapes.
class ShapeViolation : public Error {
 public:
  using Error::Error;
};

class InvalidTrace : public Error {
 public:
  using Error::Error;
};

}  // namespace lambdah

#endif  // LAMBDAH_ERROR_HPP
