#include "fh/perturbation.hpp"

#include <cmath>
#include <limits>

#include "fh/errors.hpp"

namespace fh {

namespace {

struct KahanC {
  Complex sum{0.0, 0.0};
  Complex comp{0.0, 0.0};
  void add(Complex x) {
    const Complex y = x - comp;
    const Complex t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

void check_dim(const Spectrum& spec, const DiagonalPerturbation& V) {
  if (V.v.size() != spec.n) throw ValidationError("perturbation: dimension mismatch");
}

}  // namespace

DiagonalPerturbation DiagonalPerturbation::standard_normal(int n, CounterRng& rng) {
  DiagonalPerturbation p;
  p.v.resize(n);
  for (int i = 0; i < n; ++i) p.v(i) = Complex(rng.next_normal(), 0.0);
  p.variance = 1.0;
  return p;
}

DiagonalPerturbation DiagonalPerturbation::standard_complex_normal(int n, CounterRng& rng) {
  DiagonalPerturbation p;
  p.v.resize(n);
  for (int i = 0; i < n; ++i) p.v(i) = rng.next_complex_normal();
  p.variance = 0.0;  // E(v^2) = 0 for circular complex normals
  return p;
}

DiagonalPerturbation DiagonalPerturbation::constant(int n, Complex value) {
  DiagonalPerturbation p;
  p.v = Eigen::VectorXcd::Constant(n, value);
  p.variance = std::norm(value);
  return p;
}

DiagonalPerturbation DiagonalPerturbation::indicator(int n, int site) {
  if (site < 0 || site >= n) throw ValidationError("indicator: site out of range");
  DiagonalPerturbation p;
  p.v = Eigen::VectorXcd::Zero(n);
  p.v(site) = 1.0;
  p.variance = 0.0;
  return p;
}

Eigen::VectorXcd first_order(const Spectrum& spec, const DiagonalPerturbation& V) {
  check_dim(spec, V);
  Eigen::VectorXcd e1(spec.n);
  for (int l = 0; l < spec.n; ++l) {
    KahanC acc;
    for (int i = 0; i < spec.n; ++i) acc.add(V.v(i) * spec.left(l, i) * spec.right(i, l));
    e1(l) = acc.sum;
  }
  return e1;
}

Eigen::VectorXcd second_order(const Spectrum& spec, const DiagonalPerturbation& V) {
  check_dim(spec, V);
  const int n = spec.n;
  const Eigen::MatrixXcd B = spec.left * V.v.asDiagonal() * spec.right;
  const double gap_floor = 1e-12 * (1.0 + spec.values.cwiseAbs().maxCoeff());
  Eigen::VectorXcd e2(n);
  for (int l = 0; l < n; ++l) {
    KahanC acc;
    for (int j = 0; j < n; ++j) {
      if (j == l) continue;
      const Complex d = spec.values(l) - spec.values(j);
      if (std::abs(d) < gap_floor)
        throw NearDegeneracyError("second_order: eigenvalue gap underflow", l, j);
      acc.add(B(l, j) * B(j, l) / d);
    }
    e2(l) = acc.sum;
  }
  return e2;
}

Eigen::VectorXcd expected_second_order(const Spectrum& spec, double variance) {
  const int n = spec.n;
  Eigen::VectorXcd out(n);
  for (int l = 0; l < n; ++l) {
    KahanC acc;
    for (int j = 0; j < n; ++j) {
      if (j == l) continue;
      acc.add(1.0 / (spec.values(l) - spec.values(j)));
    }
    out(l) = (variance / n) * acc.sum;
  }
  return out;
}

AttractionTerms conjugate_attraction(const Spectrum& spec, int ell, double variance) {
  if (ell < 0 || ell >= spec.n) throw ValidationError("conjugate_attraction: index out of range");
  const Complex e = spec.values(ell);
  const double scale = 1.0 + std::abs(e);
  if (std::abs(e.imag()) <= 1e-12 * scale)
    throw NoConjugateError("conjugate_attraction: eigenvalue is real");
  int partner = -1;
  double bd = std::numeric_limits<double>::infinity();
  for (int j = 0; j < spec.n; ++j) {
    const double d = std::abs(spec.values(j) - std::conj(e));
    if (d < bd) {
      bd = d;
      partner = j;
    }
  }
  if (partner < 0 || bd > 1e-8 * scale)
    throw NoConjugateError("conjugate_attraction: conjugate partner not present");

  AttractionTerms t;
  t.closed_form = Complex(0.0, -1.0) * variance / (2.0 * spec.n * e.imag());
  KahanC acc;
  for (int m = 0; m < spec.n; ++m)
    acc.add(std::norm(spec.right(m, ell)) * std::norm(spec.left(ell, m)));
  t.exact = variance * acc.sum / (e - std::conj(e));
  return t;
}

FirstOrderEigvec first_order_eigvec(const Spectrum& spec, const DiagonalPerturbation& V,
                                    double sigma) {
  check_dim(spec, V);
  const int n = spec.n;
  const Eigen::MatrixXcd B = spec.left * V.v.asDiagonal() * spec.right;
  Eigen::MatrixXcd C(n, n), D(n, n);
  double min_gap = std::numeric_limits<double>::infinity();
  const double gap_floor = 1e-12 * (1.0 + spec.values.cwiseAbs().maxCoeff());
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) {
      if (j == l) {
        C(l, j) = D(j, l) = 0.0;
        continue;
      }
      const Complex d = spec.values(l) - spec.values(j);
      const double ad = std::abs(d);
      if (ad < gap_floor)
        throw NearDegeneracyError("first_order_eigvec: eigenvalue gap underflow", l, j);
      min_gap = std::min(min_gap, ad);
      C(l, j) = B(l, j) / d;
      D(j, l) = B(j, l) / d;
    }
  }
  FirstOrderEigvec out;
  out.gap_warning = sigma * V.norm2() > 0.1 * min_gap;
  out.left = spec.left + sigma * (C * spec.left);
  out.right = spec.right + sigma * (spec.right * D);
  out.predicted_kappa.resize(n);
  for (int l = 0; l < n; ++l) out.predicted_kappa(l) = out.left.row(l).norm();
  return out;
}

PerturbationReport make_report(const Spectrum& spec, const DiagonalPerturbation& V, double sigma) {
  PerturbationReport r;
  r.sigma = sigma;
  r.E0 = spec.values;
  r.E1 = first_order(spec, V);
  r.E2 = second_order(spec, V);
  r.predicted = r.E0 + sigma * r.E1 + sigma * sigma * r.E2;
  r.expectedE2 = expected_second_order(spec, V.variance);
  r.predicted_kappa = first_order_eigvec(spec, V, sigma).predicted_kappa;
  return r;
}

}  // namespace fh
