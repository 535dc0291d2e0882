#include "fh/special_functions.hpp"

#include <cmath>
#include <limits>

#include "fh/errors.hpp"

namespace fh {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kEulerGamma = 0.57721566490153286060651209008;
constexpr double kLogTwoPi = 1.83787706640934548356065947282;

// Lanczos g=7, n=9 coefficients (Godfrey).
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
  // valid for x >= 0.5
  double a = kLanczos[0];
  const double t = x + 6.5;
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x + i - 1);
  return 0.5 * kLogTwoPi + (x - 0.5) * std::log(t) - t + std::log(a);
}

}  // namespace

bool is_nonpositive_integer(double x, double tol) {
  if (x > 0.5) return false;
  return std::abs(x - std::round(x)) < tol;
}

double log_gamma(double x) {
  if (!(x > 0)) throw DomainError("log_gamma: argument must be positive");
  if (x < 0.5) {
    // reflection keeps the Lanczos argument in its accurate range
    return std::log(kPi / std::sin(kPi * x)) - lanczos_log_gamma(1.0 - x);
  }
  return lanczos_log_gamma(x);
}

SignedLog log_gamma_signed(double x) {
  if (is_nonpositive_integer(x)) {
    return {std::numeric_limits<double>::infinity(), 0.0};
  }
  if (x >= 0.5) return {lanczos_log_gamma(x), 1.0};
  // Gamma(x) = pi / (sin(pi x) Gamma(1-x)), Gamma(1-x) > 0 here
  const double s = std::sin(kPi * x);
  return {std::log(kPi) - std::log(std::abs(s)) - lanczos_log_gamma(1.0 - x),
          s > 0 ? 1.0 : -1.0};
}

namespace {

// ln G(1+z) for z in (0, 1]: Weierstrass-style product with the tail
// estimated by Richardson extrapolation of the partial sums at N/4, N/2, N.
double log_barnes_g_base(double z) {
  constexpr int kTerms = 100000;
  double s = 0.0, c = 0.0;  // Kahan
  double s_quarter = 0.0, s_half = 0.0;
  for (int k = 1; k <= kTerms; ++k) {
    const double zk = z / k;
    const double term = k * std::log1p(zk) - z + z * zk / 2.0;
    const double y = term - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
    if (k == kTerms / 4) s_quarter = s;
    if (k == kTerms / 2) s_half = s;
  }
  // partial sums behave as S - a/N - b/N^2; eliminate both orders
  const double u = s - s_half;
  const double v = s_half - s_quarter;
  const double tail = (5.0 * u - v) / 3.0;
  return z / 2.0 * kLogTwoPi - (z + 1.0) * z / 2.0 - kEulerGamma * z * z / 2.0 + s + tail;
}

}  // namespace

double log_barnes_g(double x) {
  if (!(x > 0)) throw DomainError("log_barnes_g: argument must be positive");
  // walk x into (1, 2] with ln G(z+1) = ln Gamma(z) + ln G(z)
  double acc = 0.0;
  while (x > 2.0) {
    x -= 1.0;
    acc += log_gamma(x);
  }
  while (x <= 1.0) {
    acc -= log_gamma(x);
    x += 1.0;
  }
  return acc + log_barnes_g_base(x - 1.0);
}

}  // namespace fh
