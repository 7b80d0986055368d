#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mdi {

// Argument outside the set where an operation is defined (time outside
// [0,T], eps <= 0, point outside an operator domain, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Singular or ill-conditioned linear algebra.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative method stopped at its cap before reaching its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double attained)
      : std::runtime_error(what), attained_tolerance_(attained) {}
  double attained_tolerance() const { return attained_tolerance_; }

 private:
  double attained_tolerance_;
};

class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised inside a solve when an iterate breaks one of the a-priori bounds or
// an audited hypothesis constant (m, alpha, c).
class BoundViolation : public std::runtime_error {
 public:
  explicit BoundViolation(const std::string& what) : std::runtime_error(what) {}
};

// The refinement ladder ran out of levels before the Cauchy gap met tol.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> gaps)
      : std::runtime_error(what), gaps_(std::move(gaps)) {}
  const std::vector<double>& gap_history() const { return gaps_; }

 private:
  std::vector<double> gaps_;
};

// Malformed problem file or trajectory CSV.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mdi
