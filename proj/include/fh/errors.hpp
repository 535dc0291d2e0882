#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symbol evaluated at its Fisher-Hartwig singular point with a pole there.
struct SingularPointError : Error {
  using Error::Error;
};

// Newton inversion of the symbol failed to converge.
struct ConvergenceError : Error {
  std::complex<double> target;
  double residual;
  ConvergenceError(const std::string& msg, std::complex<double> target_, double residual_)
      : Error(msg), target(target_), residual(residual_) {}
};

struct DomainError : Error {
  using Error::Error;
};

// Numerically multiple or defective spectrum.
struct DegeneracyError : Error {
  double gap;
  DegeneracyError(const std::string& msg, double gap_) : Error(msg), gap(gap_) {}
};

// Eigenvector matrix too ill-conditioned to invert reliably.
struct IllPosedBasisError : Error {
  double condition_estimate;
  IllPosedBasisError(const std::string& msg, double cond) : Error(msg), condition_estimate(cond) {}
};

struct NearDegeneracyError : Error {
  int l, j;
  NearDegeneracyError(const std::string& msg, int l_, int j_) : Error(msg), l(l_), j(j_) {}
};

struct OnCurveError : Error {
  using Error::Error;
};

struct PoleError : Error {
  using Error::Error;
};

struct GridTooCoarseError : Error {
  double sigma;
  GridTooCoarseError(const std::string& msg, double sigma_) : Error(msg), sigma(sigma_) {}
};

struct CapacityError : Error {
  using Error::Error;
};

struct NormalizationError : Error {
  using Error::Error;
};

struct NoConjugateError : Error {
  using Error::Error;
};

struct DegenerateWindingError : Error {
  using Error::Error;
};

struct AxisMismatchError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace fh
