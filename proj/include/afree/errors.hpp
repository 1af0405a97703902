#ifndef AFREE_ERRORS_HPP
#define AFREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace afree {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the operator DSL parser with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int col)
      : Error(what + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
        line(line),
        col(col) {}
  int line;
  int col;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Homogeneity weight system has no solution at all.
class InfeasibleWeights : public Error {
 public:
  InfeasibleWeights(const std::string& what, int equation)
      : Error(what), equation(equation) {}
  int equation;
};

// System solvable but no strictly positive weight vector exists.
class NoPositiveSolution : public Error {
 public:
  NoPositiveSolution(const std::string& what, int equation)
      : Error(what), equation(equation) {}
  int equation;
};

class ZeroFrequency : public Error {
 public:
  using Error::Error;
};

class HomogeneityViolated : public Error {
 public:
  using Error::Error;
};

class ZeroSingularPart : public Error {
 public:
  using Error::Error;
};

class MeasureOutsideWindow : public Error {
 public:
  using Error::Error;
};

class NotAFree : public Error {
 public:
  NotAFree(const std::string& what, double residual) : Error(what), residual(residual) {}
  double residual;
};

class CertificateFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace afree

#endif
