#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace exdyn {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A distribution or operator parameter outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A state violates the pocket capacities of a restricted model.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on a set of zero mass.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Operators or state spaces that cannot be combined.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A model specification that is inconsistent with the requested use.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A symmetry descriptor that cannot be lumped or built.
class DescriptorError : public Error {
 public:
  using Error::Error;
};

/// The stationary equation of a generator has more than one solution.
class MultiplicityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Syntax or semantic error in a run configuration. Line and column are
/// 1-based; zero means "not tied to a position".
class ConfigError : public Error {
 public:
  ConfigError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace exdyn
