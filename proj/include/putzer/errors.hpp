#ifndef PUTZER_ERRORS_HPP
#define PUTZER_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace putzer {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands disagree in dimension or sequence length.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// LU elimination met a pivot below tolerance; carries the failing step.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, int pivot_index)
      : Error(what), pivot_index_(pivot_index) {}
  int pivot_index() const { return pivot_index_; }

 private:
  int pivot_index_;
};

// Evaluation point lies outside the admissible open interval.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input spectrum touches the closed negative real axis, so the
// principal logarithm does not exist.
class PrincipalLogError : public Error {
 public:
  PrincipalLogError(const std::string& what,
                    std::vector<std::complex<double>> offending)
      : Error(what), offending_(std::move(offending)) {}
  const std::vector<std::complex<double>>& offending() const {
    return offending_;
  }

 private:
  std::vector<std::complex<double>> offending_;
};

// An iterative method ran out of its iteration or subdivision budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Derived quantities disagree beyond tolerance (e.g. the spectrum does
// not reproduce the polynomial it should factor).
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// Malformed input file or stream.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Violated operation precondition (e.g. series norm bound).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace putzer

#endif
