#pragma once

#include <stdexcept>
#include <string>

namespace landau {

/// Base class for numerical failures raised by the library. Argument
/// validation failures use std::invalid_argument directly.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A property that the matrix theory guarantees (simple positive spectrum,
/// nonzero first eigenvector component, nonsingular bordered system) failed
/// numerically. Always indicates a bug or a broken build.
class LemmaViolation : public Error {
 public:
  using Error::Error;
};

/// A mode-wise solve hit a (near) singular matrix n^2 w^2 I - B0 C.
class ResonanceError : public Error {
 public:
  ResonanceError(const std::string& what, int mode) : Error(what), mode_(mode) {}
  int mode() const noexcept { return mode_; }

 private:
  int mode_;
};

class SeriesDivergence : public Error {
 public:
  using Error::Error;
};

/// Requested accuracy could not be reached; `achieved` carries the best
/// estimate available when the failure was detected.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class NoContraction : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// The finite Landau basis is too small for the requested residual.
class TruncationInsufficient : public Error {
 public:
  TruncationInsufficient(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace landau
