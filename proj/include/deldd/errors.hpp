#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deldd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Forbidden manager configuration, e.g. complement edges with a ZDD rule.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A node was requested whose children do not sit strictly below its variable.
class OrderingError : public Error {
 public:
  using Error::Error;
};

class VocabularyError : public Error {
 public:
  using Error::Error;
};

class ManagerMismatchError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Node budget or enumeration budget exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The designated state of a scene does not satisfy the state law.
class InvalidSceneError : public Error {
 public:
  using Error::Error;
};

class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace deldd
