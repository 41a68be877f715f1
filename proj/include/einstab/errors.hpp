#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace einstab {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An Einstein constraint identity failed to hold within tolerance.
/// The message names the violated equation and carries the residual.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Newton iteration exhausted its budget; carries the last iterate and
/// the residual norm it reached.
class MaxIterationsExceeded : public Error {
 public:
  MaxIterationsExceeded(const std::string& msg, std::vector<double> last,
                        double residual_norm)
      : Error(msg),
        last_iterate(std::move(last)),
        residual_norm(residual_norm) {}

  std::vector<double> last_iterate;
  double residual_norm = 0.0;
};

class NoSolutionFound : public Error {
 public:
  NoSolutionFound(const std::string& msg, double best_residual)
      : Error(msg), best_residual(best_residual) {}

  double best_residual = 0.0;
};

class NotEinstein : public Error {
 public:
  using Error::Error;
};

class SpanNotTraceFree : public Error {
 public:
  using Error::Error;
};

class SpanDependent : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class MRequiresAtLeastThree : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class NotOnSimplex : public Error {
 public:
  using Error::Error;
};

class PairingOutOfRange : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace einstab
