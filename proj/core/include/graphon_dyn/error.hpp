#pragma once

#include <stdexcept>
#include <string>

namespace graphon_dyn {

enum class ErrorKind {
  invalid_input,     // malformed or inconsistent arguments / configuration
  unsupported_size,  // valid input beyond an explicit computational bound
  runtime,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::invalid_input, what) {}
};

class UnsupportedSize : public Error {
 public:
  explicit UnsupportedSize(const std::string& what)
      : Error(ErrorKind::unsupported_size, what) {}
};

}  // namespace graphon_dyn
