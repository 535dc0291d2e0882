#include "fh/localization.hpp"

#include <cmath>
#include <vector>

#include "fh/errors.hpp"

namespace fh {

const char* to_string(DecayClass c) {
  switch (c) {
    case DecayClass::ExponentialBoundary: return "ExponentialBoundary";
    case DecayClass::AlgebraicInterior: return "AlgebraicInterior";
    case DecayClass::SuperExponentialBoundary: return "SuperExponentialBoundary";
    case DecayClass::Unclassified: return "Unclassified";
  }
  return "?";
}

namespace {

void require_unit(const Eigen::VectorXcd& vec, double tol) {
  if (std::abs(vec.norm() - 1.0) > tol)
    throw NormalizationError("localization: vector is not unit norm");
}

struct Fit {
  double slope = 0.0;
  double r2 = 0.0;
};

Fit least_squares(const std::vector<double>& x, const std::vector<double>& y, std::size_t lo,
                  std::size_t hi) {
  const double m = static_cast<double>(hi - lo);
  double sx = 0, sy = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  Fit f;
  f.slope = sxy / std::max(sxx, 1e-300);
  double ss_res = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double pred = my + f.slope * (x[i] - mx);
    ss_res += (y[i] - pred) * (y[i] - pred);
  }
  f.r2 = 1.0 - ss_res / std::max(syy, 1e-300);
  return f;
}

}  // namespace

double shannon_entropy(const Eigen::VectorXcd& vec) {
  require_unit(vec, 1e-10);
  double h = 0.0;
  for (int j = 0; j < vec.size(); ++j) {
    const double q = std::norm(vec(j));
    if (q > 0.0) h -= q * std::log2(q);
  }
  return h;
}

double ipr(const Eigen::VectorXcd& vec) {
  require_unit(vec, 1e-10);
  double s = 0.0;
  for (int j = 0; j < vec.size(); ++j) s += std::norm(vec(j)) * std::norm(vec(j));
  return s;
}

LocalizationProfile decay_profile(const Eigen::VectorXcd& vec) {
  const int n = static_cast<int>(vec.size());
  if (n < 16) throw ValidationError("decay_profile: need n >= 16");
  require_unit(vec, 1e-10);

  LocalizationProfile prof;
  prof.entropy = shannon_entropy(vec);
  prof.ipr = ipr(vec);

  int am = 0;
  double best = -1.0;
  for (int j = 0; j < n; ++j) {
    const double m = std::abs(vec(j));
    if (m > best) {
      best = m;
      am = j;
    }
  }
  prof.argmax_index = am;

  // tail on the longer side of the maximum, last 5% of it excluded
  const int step = (n - am >= am + 1) ? 1 : -1;
  const int side_len = (step == 1) ? n - am : am + 1;
  int len = std::max(8, static_cast<int>(std::lround(side_len * 0.95)));
  len = std::min(len, side_len);

  std::vector<double> xs, lx, ly;
  for (int i = 0; i < len; ++i) {
    const double mag = std::abs(vec(am + step * i));
    if (mag < 1e-14) {
      prof.underflow_trimmed = true;
      break;
    }
    xs.push_back(static_cast<double>(i));
    lx.push_back(std::log(static_cast<double>(i + 1)));
    ly.push_back(std::log(mag));
  }
  if (xs.size() < 8) {
    prof.decay_class = DecayClass::Unclassified;
    return prof;
  }

  const Fit fe = least_squares(xs, ly, 0, xs.size());
  const Fit fa = least_squares(lx, ly, 0, xs.size());
  prof.exp_rate = -fe.slope;
  prof.alg_power = -fa.slope;
  prof.exp_r2 = fe.r2;
  prof.alg_r2 = fa.r2;

  const bool boundary = am < n / 10;
  if (fe.r2 >= fa.r2) {
    if (!boundary) {
      prof.decay_class = DecayClass::Unclassified;
      return prof;
    }
    // super-exponential: second-half rate exceeds the first-half rate by 25%
    const std::size_t h = xs.size() / 2;
    const Fit f1 = least_squares(xs, ly, 0, h);
    const Fit f2 = least_squares(xs, ly, h, xs.size());
    if (f1.slope < 0 && -f2.slope >= 1.25 * (-f1.slope))
      prof.decay_class = DecayClass::SuperExponentialBoundary;
    else
      prof.decay_class = DecayClass::ExponentialBoundary;
  } else {
    prof.decay_class = boundary ? DecayClass::Unclassified : DecayClass::AlgebraicInterior;
  }
  return prof;
}

}  // namespace fh
