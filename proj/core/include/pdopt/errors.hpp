#pragma once

#include <stdexcept>
#include <string>

namespace pdopt {

// Argument outside the mathematical domain of an operation (bias beyond the
// photodiode rating, empty ranges, malformed series specs).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The circuit model could not produce a value, e.g. no -3 dB crossing inside
// the search window.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or incomplete configuration / fixture files.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reference merit is not the global optimum (some run beat it).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The genetic algorithm could not assemble a first generation of non-zero
// merit chromosomes within its draw budget.
class InitializationError : public std::runtime_error {
 public:
  InitializationError(const std::string& what, double zero_merit_fraction)
      : std::runtime_error(what), zero_merit_fraction_(zero_merit_fraction) {}

  double zero_merit_fraction() const noexcept { return zero_merit_fraction_; }

 private:
  double zero_merit_fraction_;
};

}  // namespace pdopt
