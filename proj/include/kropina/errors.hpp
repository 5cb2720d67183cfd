#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kropina {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument of an operation outside its mathematical domain (sqrt/ln of a
// non-positive value, division by zero, a point outside a conic domain).
class DomainError : public Error {
 public:
  DomainError(std::string operation, double value, const std::string& detail = {})
      : Error(operation + ": argument " + std::to_string(value) + " outside domain" +
              (detail.empty() ? std::string{} : " (" + detail + ")")),
        operation_(std::move(operation)),
        value_(value) {}

  const std::string& operation() const noexcept { return operation_; }
  double value() const noexcept { return value_; }

 private:
  std::string operation_;
  double value_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class DefinitenessError : public Error {
 public:
  DefinitenessError(const std::string& what, std::vector<double> eigenvalues)
      : Error(what), eigenvalues_(std::move(eigenvalues)) {}
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  std::vector<double> eigenvalues_;
};

class SingularError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class StructureError : public Error {
 public:
  using Error::Error;
};

}  // namespace kropina
