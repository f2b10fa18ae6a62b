#pragma once

#include <stdexcept>
#include <string>

namespace phaseop {

// A magnitude left the range of the target floating representation.
class RangeError : public std::overflow_error {
 public:
  RangeError(const std::string& what, std::size_t dimension)
      : std::overflow_error(what), dimension_(dimension) {}
  std::size_t dimension() const { return dimension_; }

 private:
  std::size_t dimension_;
};

// Argument outside the analytic domain (branch cut, open phase interval).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConstraintViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace phaseop
