#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mushybench {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent or missing configuration (material file, scenario, grid).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// The closed-form liquid fraction is undefined (a == 0 or p == 0).
class DegenerateCoefficients : public Error {
 public:
  using Error::Error;
};

/// Enthalpy-to-temperature inversion could not bracket the root.
class InversionError : public Error {
 public:
  using Error::Error;
};

/// A non-finite value appeared while evaluating a closed form.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// The Runge-Kutta march produced a non-finite value.
class IntegrationError : public Error {
 public:
  using Error::Error;
};

/// No sign change was found. `table` holds the scanned (argument, value) pairs.
class RootNotFound : public Error {
 public:
  RootNotFound(const std::string& what, std::vector<std::pair<double, double>> table)
      : Error(what), table(std::move(table)) {}
  std::vector<std::pair<double, double>> table;
};

/// More than one root bracket, or a point on a front with no side given.
class AmbiguityError : public Error {
 public:
  explicit AmbiguityError(const std::string& what,
                          std::vector<std::pair<double, double>> brackets = {})
      : Error(what), brackets(std::move(brackets)) {}
  std::vector<std::pair<double, double>> brackets;
};

/// Non-finite coefficient while assembling the implicit system.
class AssemblyError : public Error {
 public:
  AssemblyError(const std::string& what, std::size_t node) : Error(what), node(node) {}
  std::size_t node;
};

/// Zero pivot in the tri-diagonal elimination.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Report construction failed (e.g. empty trace).
class ReportError : public Error {
 public:
  using Error::Error;
};

}  // namespace mushybench
