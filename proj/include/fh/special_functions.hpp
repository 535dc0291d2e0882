#pragma once

namespace fh {

struct SignedLog {
  double log_abs;  // ln|value|
  double sign;     // -1, 0 (pole), +1
};

// ln Gamma(x) for x > 0, Lanczos approximation.
double log_gamma(double x);

// ln|Gamma(x)| with sign, any real x. Non-positive-integer poles
// (within 1e-12) come back with sign 0 and log_abs = +inf.
SignedLog log_gamma_signed(double x);

// True when x is within tol of a non-positive integer.
bool is_nonpositive_integer(double x, double tol = 1e-12);

// ln G(x) for the Barnes G-function, x > 0.
double log_barnes_g(double x);

}  // namespace fh
