#include "fh/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "fh/errors.hpp"
#include "fh/special_functions.hpp"

namespace fh {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 6.28318530717958647692528676656;
const Complex kI{0.0, 1.0};

double wrap_2pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0) y += kTwoPi;
  return y;
}
}  // namespace

// Gamma poles at negative-integer alpha +- beta are allowed here (they give
// zero matrix entries); only the Barnes-G determinant needs the stronger
// condition and checks it itself.
bool SymbolParams::valid() const { return alpha > -0.5; }

void SymbolParams::validate() const {
  if (!valid()) throw ValidationError("SymbolParams: need alpha > -1/2 (integrability)");
}

Complex eval_symbol(const SymbolParams& params, Complex p) {
  const Complex w = 2.0 - 2.0 * std::cos(p);
  if (params.alpha < 0 && std::abs(w) < 1e-14)
    throw SingularPointError("eval_symbol: symbol pole at p = 0 (mod 2pi)");
  Complex exponent = kI * params.beta * (kPi - p);
  if (params.alpha != 0.0) {
    if (std::abs(w) == 0.0) return {0.0, 0.0};  // alpha > 0: the symbol zero
    exponent += params.alpha * std::log(w);
  }
  return std::exp(exponent);
}

Complex symbol_derivative(const SymbolParams& params, Complex p) {
  const Complex a = eval_symbol(params, p);
  if (params.alpha == 0.0) return -kI * params.beta * a;
  const Complex s = std::sin(p / 2.0);
  if (std::abs(s) < 1e-9)
    throw SingularPointError("symbol_derivative: singular at p = 0 (mod 2pi)");
  return (params.alpha * std::cos(p / 2.0) / s - kI * params.beta) * a;
}

double fourier_coefficient(const SymbolParams& params, long r) {
  const double x = params.alpha + params.beta + 1.0 - static_cast<double>(r);
  const double y = params.alpha - params.beta + 1.0 + static_cast<double>(r);
  const SignedLog lx = log_gamma_signed(x);
  const SignedLog ly = log_gamma_signed(y);
  if (lx.sign == 0.0 || ly.sign == 0.0) return 0.0;  // Gamma pole in a denominator
  const double mag = std::exp(log_gamma(2.0 * params.alpha + 1.0) - lx.log_abs - ly.log_abs);
  const double parity = (r % 2 == 0) ? 1.0 : -1.0;
  return parity * lx.sign * ly.sign * mag;
}

int polyline_winding(const std::vector<Complex>& points, Complex center) {
  if (points.size() < 3)
    throw DegenerateWindingError("polyline_winding: need at least 3 points");
  double scale = 0.0;
  for (const Complex& z : points) scale = std::max(scale, std::abs(z - center));
  const double tol = 1e-9 * (1.0 + scale);
  double total = 0.0;
  const std::size_t m = points.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Complex a = points[k] - center;
    const Complex b = points[(k + 1) % m] - center;
    if (std::abs(a) <= tol || std::abs(b) <= tol)
      throw DegenerateWindingError("polyline_winding: center on the polyline");
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

namespace {
double point_segment_distance(Complex p, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  double t = ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}
}  // namespace

int winding_number(const SymbolParams& params, Complex point, int grid) {
  params.validate();
  if (grid < 256) throw ValidationError("winding_number: grid must be >= 256");
  // z = e^{i theta} counterclockwise means p = -theta, i.e. p descending
  std::vector<Complex> pts(grid);
  for (int k = 0; k < grid; ++k) {
    const double theta = kTwoPi * (k + 0.5) / grid;
    pts[k] = eval_symbol(params, Complex(kTwoPi - theta, 0.0));
  }
  double scale = 0.0;
  for (const Complex& z : pts) scale = std::max(scale, std::abs(z));
  double mindist = 1e300;
  for (int k = 0; k < grid; ++k)
    mindist = std::min(mindist, point_segment_distance(point, pts[k], pts[(k + 1) % grid]));
  if (mindist < 1e-5 * (1.0 + scale))
    throw OnCurveError("winding_number: point lies on the symbol image");
  return polyline_winding(pts, point);
}

Momentum invert_symbol(const SymbolParams& params, Complex E, Complex guess) {
  params.validate();
  const double tol = 1e-10 * (1.0 + std::abs(E));
  double best_residual = 1e300;
  for (int attempt = 0; attempt < 9; ++attempt) {
    Complex p = guess;
    if (attempt > 0) {
      // deterministic perturbed restarts around the seed
      const double ang = kTwoPi * attempt / 8.0;
      p += 0.15 * Complex(std::cos(ang), std::sin(ang));
    }
    Complex f;
    try {
      f = eval_symbol(params, p) - E;
    } catch (const SingularPointError&) {
      continue;
    }
    for (int it = 0; it < 100; ++it) {
      if (std::abs(f) <= tol) {
        Momentum m;
        m.p = Complex(wrap_2pi(p.real()), p.imag());
        return m;
      }
      Complex dp;
      try {
        dp = f / symbol_derivative(params, p);
      } catch (const SingularPointError&) {
        break;
      }
      if (!std::isfinite(dp.real()) || !std::isfinite(dp.imag())) break;
      if (std::abs(dp) > 0.5) dp *= 0.5 / std::abs(dp);
      // damped step: halve until the residual does not grow
      Complex pn = p - dp;
      Complex fn = f;
      bool ok = false;
      for (int h = 0; h < 20; ++h) {
        bool evaluated = true;
        try {
          fn = eval_symbol(params, pn) - E;
        } catch (const SingularPointError&) {
          evaluated = false;
        }
        if (evaluated && (std::abs(fn) < std::abs(f) || h == 19)) {
          ok = true;
          break;
        }
        pn = p + (pn - p) * 0.5;
      }
      if (!ok) break;
      p = pn;
      f = fn;
    }
    best_residual = std::min(best_residual, std::abs(f));
  }
  throw ConvergenceError("invert_symbol: Newton did not converge", E, best_residual);
}

Momentum asymptotic_momentum(int n, int ell, const SymbolParams& params) {
  Momentum m;
  m.p = Complex(kTwoPi * ell / n, (2.0 * params.alpha + 1.0) * std::log(static_cast<double>(n)) / n);
  return m;
}

Complex asymptotic_eigenvalue(const SymbolParams& params, int n, int ell) {
  if (ell < 1 || ell > n - 1) throw ValidationError("asymptotic_eigenvalue: need 1 <= ell <= n-1");
  const double s = std::sin(kPi * ell / n);
  return std::exp(kI * kPi * params.beta) * std::pow(4.0, params.alpha) *
         std::pow(s, 2.0 * params.alpha) * std::exp(-2.0 * kI * kPi * params.beta * static_cast<double>(ell) / static_cast<double>(n));
}

std::vector<Complex> asymptotic_right_eigenvector(const SymbolParams& params, int n, int ell) {
  if (ell < 1 || ell > n - 1) throw ValidationError("asymptotic_right_eigenvector: need 1 <= ell <= n-1");
  const double delta = (2.0 * params.alpha + 1.0) * std::log(static_cast<double>(n)) / n;
  const double amp = std::sqrt(2.0 * (1.0 + 2.0 * params.alpha) * std::log(static_cast<double>(n)) / n);
  const Complex rate = Complex(0.0, kTwoPi * ell / n) - Complex(delta, 0.0);
  std::vector<Complex> v(n);
  for (int j = 0; j < n; ++j) v[j] = amp * std::exp(rate * static_cast<double>(j));
  return v;
}

std::vector<Complex> asymptotic_left_eigenvector(const SymbolParams& params, int n, int ell) {
  std::vector<Complex> psi = asymptotic_right_eigenvector(params, n, ell);
  Complex pairing{0.0, 0.0};
  for (int j = 0; j < n; ++j) pairing += psi[n - 1 - j] * psi[j];
  const Complex c = 1.0 / pairing;
  std::vector<Complex> lv(n);
  for (int j = 0; j < n; ++j) lv[j] = c * psi[n - 1 - j];
  return lv;
}

}  // namespace fh
