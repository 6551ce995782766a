#pragma once

#include <stdexcept>
#include <string>

namespace photonstat {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A probability entry was more negative than the zero tolerance allows.
class NegativeProbability : public Error {
 public:
  NegativeProbability(int index, double value)
      : Error("p[" + std::to_string(index) + "] = " + std::to_string(value) +
              " is negative beyond the zero tolerance"),
        index(index),
        value(value) {}
  int index;
  double value;
};

/// The window sum is incompatible with the declared normalization policy.
class NormalizationViolation : public Error {
 public:
  explicit NormalizationViolation(double sum)
      : Error("window sum " + std::to_string(sum) +
              " violates the normalization policy"),
        sum(sum) {}
  double sum;
};

/// The available window is too short for the requested operation.
class WindowTooShort : public Error {
 public:
  explicit WindowTooShort(const std::string& what) : Error(what) {}
};

/// Cat-state spec with intensity 0 and relative phase pi is the null vector.
class DegenerateCat : public Error {
 public:
  DegenerateCat() : Error("cat state with intensity 0 and theta = pi is the null vector") {}
};

/// The factorial-moment tail grows at the window edge; the entry is unreliable.
class DivergentTail : public Error {
 public:
  explicit DivergentTail(int order)
      : Error("factorial moment of order " + std::to_string(order) +
              " has a growing or unconverged tail at the window edge"),
        order(order) {}
  int order;
};

/// Adaptive quadrature failed to meet the refinement tolerance.
class QuadratureNotConverged : public Error {
 public:
  explicit QuadratureNotConverged(int order)
      : Error("quadrature for moment order " + std::to_string(order) +
              " did not converge"),
        order(order) {}
  int order;
};

/// Malformed input file or value (carries a human-readable diagnostic).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

/// Precondition breach not covered by a more specific error.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

}  // namespace photonstat
