#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lvlab {

// Exit-code families used by the CLI.
enum class ErrorKind { invariant = 1, invalid_input = 2, budget = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what) : Error(ErrorKind::invalid_input, what) {}
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::size_t required_bytes = 0)
      : Error(ErrorKind::budget, what), required_bytes_(required_bytes) {}
  std::size_t required_bytes() const noexcept { return required_bytes_; }

 private:
  std::size_t required_bytes_;
};

class QuadratureError : public Error {
 public:
  explicit QuadratureError(const std::string& what) : Error(ErrorKind::invariant, what) {}
};

class InvariantFailure : public Error {
 public:
  explicit InvariantFailure(const std::string& what) : Error(ErrorKind::invariant, what) {}
};

}  // namespace lvlab
