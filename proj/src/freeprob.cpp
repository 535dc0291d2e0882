#include "fh/freeprob.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "fh/errors.hpp"
#include "fh/parallel.hpp"
#include "fh/perturbation.hpp"
#include "fh/toeplitz.hpp"

namespace fh {

DosHistogram make_histogram(const std::vector<double>& samples, Axis axis, int bins, double lo,
                            double hi) {
  if (bins < 1 || !(hi > lo)) throw ValidationError("make_histogram: bad bin spec");
  DosHistogram h;
  h.axis = axis;
  h.sample_count = static_cast<long>(samples.size());
  h.edges.resize(bins + 1);
  for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
  h.mass.assign(bins, 0.0);
  const double w = 1.0 / std::max<std::size_t>(samples.size(), 1);
  for (double x : samples) {
    int b = static_cast<int>((x - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    h.mass[b] += w;
  }
  return h;
}

namespace {

double cdf_at(const DosHistogram& h, double x) {
  if (x <= h.edges.front()) return 0.0;
  if (x >= h.edges.back()) return 1.0;
  double acc = 0.0;
  for (std::size_t b = 0; b + 1 < h.edges.size(); ++b) {
    if (x >= h.edges[b + 1]) {
      acc += h.mass[b];
    } else {
      acc += h.mass[b] * (x - h.edges[b]) / (h.edges[b + 1] - h.edges[b]);
      break;
    }
  }
  return acc;
}

}  // namespace

double dos_distance(const DosHistogram& h1, const DosHistogram& h2) {
  if (h1.axis != h2.axis) throw AxisMismatchError("dos_distance: axis mismatch");
  std::vector<double> knots;
  knots.reserve(h1.edges.size() + h2.edges.size());
  knots.insert(knots.end(), h1.edges.begin(), h1.edges.end());
  knots.insert(knots.end(), h2.edges.begin(), h2.edges.end());
  std::sort(knots.begin(), knots.end());
  double d = 0.0;
  // difference of two piecewise-linear CDFs is extremal at a knot
  for (double x : knots) d = std::max(d, std::abs(cdf_at(h1, x) - cdf_at(h2, x)));
  return d;
}

Eigen::MatrixXd sample_haar_orthogonal(int n, CounterRng& rng) {
  if (n < 1) throw ValidationError("sample_haar_orthogonal: n must be >= 1");
  Eigen::MatrixXd A(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) A(i, j) = rng.next_normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd& R = qr.matrixQR();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  return Q;
}

namespace {

struct Pools {
  std::vector<double> re, im;
  long failed = 0;
};

void pool_values(const Eigen::VectorXcd& w, Pools& p) {
  for (int i = 0; i < w.size(); ++i) {
    p.re.push_back(w(i).real());
    p.im.push_back(w(i).imag());
  }
}

DosPair histogram_pair(const Pools& pool, const Eigen::VectorXcd& reference, int bins) {
  // 128 uniform bins over pooled min/max of ensemble and reference, 5% margin
  auto range = [&](Axis axis) {
    double lo = 1e300, hi = -1e300;
    const std::vector<double>& xs = (axis == Axis::Re) ? pool.re : pool.im;
    for (double x : xs) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    for (int i = 0; i < reference.size(); ++i) {
      const double x = (axis == Axis::Re) ? reference(i).real() : reference(i).imag();
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    const double margin = 0.05 * std::max(hi - lo, 1e-12);
    return std::pair<double, double>(lo - margin, hi + margin);
  };
  DosPair out;
  const auto [rlo, rhi] = range(Axis::Re);
  const auto [ilo, ihi] = range(Axis::Im);
  out.re = make_histogram(pool.re, Axis::Re, bins, rlo, rhi);
  out.im = make_histogram(pool.im, Axis::Im, bins, ilo, ihi);
  out.failed_trials = pool.failed;
  return out;
}

Pools free_pools(const Spectrum& spec, double sigma, int trials, CounterRng& rng) {
  const int n = spec.n;
  const Eigen::VectorXcd lambda = spec.values;
  std::vector<Eigen::VectorXcd> results(trials);
  std::vector<char> ok(trials, 1);
  std::vector<CounterRng> streams;
  streams.reserve(trials);
  for (int t = 0; t < trials; ++t) streams.push_back(rng.substream(t));
  parallel_for(trials, [&](std::size_t t) {
    CounterRng local = streams[t];
    Eigen::MatrixXd Q = sample_haar_orthogonal(n, local);
    DiagonalPerturbation V = DiagonalPerturbation::standard_normal(n, local);
    Eigen::MatrixXcd M = Q.transpose().cast<Complex>() * lambda.asDiagonal() * Q.cast<Complex>();
    M += sigma * Eigen::MatrixXcd(V.v.asDiagonal());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, false);
    if (solver.info() != Eigen::Success) {
      ok[t] = 0;
      return;
    }
    results[t] = solver.eigenvalues();
  });
  Pools p;
  for (int t = 0; t < trials; ++t) {
    if (!ok[t]) {
      ++p.failed;
      continue;
    }
    pool_values(results[t], p);
  }
  return p;
}

Pools classical_pools(const Spectrum& spec, double sigma, int trials, CounterRng& rng) {
  const int n = spec.n;
  Pools p;
  for (int t = 0; t < trials; ++t) {
    CounterRng local = rng.substream(t);
    // uniform permutation (Fisher-Yates); conjugation by Pi only permutes the
    // diagonal, so the trial eigenvalues are E^{pi(i)} + sigma v_i directly
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[static_cast<int>(local.next_below(i + 1))]);
    DiagonalPerturbation V = DiagonalPerturbation::standard_normal(n, local);
    for (int i = 0; i < n; ++i) {
      const Complex w = spec.values(perm[i]) + sigma * V.v(i);
      p.re.push_back(w.real());
      p.im.push_back(w.imag());
    }
  }
  return p;
}

}  // namespace

DosPair free_approximation_dos(const Spectrum& spec, double sigma, int trials, CounterRng& rng,
                               int bins) {
  if (trials < 1) throw ValidationError("free_approximation_dos: trials must be >= 1");
  return histogram_pair(free_pools(spec, sigma, trials, rng), spec.values, bins);
}

DosPair classical_approximation_dos(const Spectrum& spec, double sigma, int trials,
                                    CounterRng& rng, int bins) {
  if (trials < 1) throw ValidationError("classical_approximation_dos: trials must be >= 1");
  return histogram_pair(classical_pools(spec, sigma, trials, rng), spec.values, bins);
}

DosComparison compare_dos(const SymbolParams& params, int n, double sigma, int trials,
                          std::uint64_t seed, int bins) {
  const ToeplitzMatrix T = build_toeplitz(params, n);
  Spectrum spec = eig_full(T.entries);
  order_by_momentum(spec, params);

  // matched per-trial V streams across the three ensembles
  CounterRng v_rng(seed, "dos-v");
  CounterRng q_rng(seed, "dos-haar");
  CounterRng p_rng(seed, "dos-perm");

  Pools exact;
  std::vector<Eigen::VectorXcd> results(trials);
  std::vector<CounterRng> vstreams;
  for (int t = 0; t < trials; ++t) vstreams.push_back(v_rng.substream(t));
  parallel_for(trials, [&](std::size_t t) {
    CounterRng local = vstreams[t];
    DiagonalPerturbation V = DiagonalPerturbation::standard_normal(n, local);
    Eigen::MatrixXd M = T.entries + sigma * Eigen::MatrixXd(V.v.real().asDiagonal());
    Eigen::EigenSolver<Eigen::MatrixXd> solver(M, false);
    results[t] = solver.eigenvalues();
  });
  for (int t = 0; t < trials; ++t) pool_values(results[t], exact);

  Pools fr;
  std::vector<CounterRng> qstreams;
  for (int t = 0; t < trials; ++t) qstreams.push_back(q_rng.substream(t));
  parallel_for(trials, [&](std::size_t t) {
    CounterRng vs = vstreams[t];
    CounterRng qs = qstreams[t];
    DiagonalPerturbation V = DiagonalPerturbation::standard_normal(n, vs);
    Eigen::MatrixXd Q = sample_haar_orthogonal(n, qs);
    Eigen::MatrixXcd M =
        Q.transpose().cast<Complex>() * spec.values.asDiagonal() * Q.cast<Complex>();
    M += sigma * Eigen::MatrixXcd(V.v.asDiagonal());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, false);
    results[t] = solver.eigenvalues();
  });
  for (int t = 0; t < trials; ++t) pool_values(results[t], fr);

  Pools cl;
  for (int t = 0; t < trials; ++t) {
    CounterRng vs = vstreams[t];
    CounterRng psr = p_rng.substream(t);
    DiagonalPerturbation V = DiagonalPerturbation::standard_normal(n, vs);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[static_cast<int>(psr.next_below(i + 1))]);
    for (int i = 0; i < n; ++i) {
      const Complex w = spec.values(perm[i]) + sigma * V.v(i);
      cl.re.push_back(w.real());
      cl.im.push_back(w.imag());
    }
  }

  // shared edges across all three ensembles per axis
  auto shared_range = [](std::initializer_list<const std::vector<double>*> lists) {
    double lo = 1e300, hi = -1e300;
    for (const auto* xs : lists)
      for (double x : *xs) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
    const double margin = 0.05 * std::max(hi - lo, 1e-12);
    return std::pair<double, double>(lo - margin, hi + margin);
  };
  const auto [rlo, rhi] = shared_range({&exact.re, &fr.re, &cl.re});
  const auto [ilo, ihi] = shared_range({&exact.im, &fr.im, &cl.im});

  DosComparison out;
  out.exact.re = make_histogram(exact.re, Axis::Re, bins, rlo, rhi);
  out.exact.im = make_histogram(exact.im, Axis::Im, bins, ilo, ihi);
  out.free_.re = make_histogram(fr.re, Axis::Re, bins, rlo, rhi);
  out.free_.im = make_histogram(fr.im, Axis::Im, bins, ilo, ihi);
  out.free_.failed_trials = fr.failed;
  out.classical.re = make_histogram(cl.re, Axis::Re, bins, rlo, rhi);
  out.classical.im = make_histogram(cl.im, Axis::Im, bins, ilo, ihi);
  out.dist_free_re = dos_distance(out.free_.re, out.exact.re);
  out.dist_classical_re = dos_distance(out.classical.re, out.exact.re);
  out.dist_free_im = dos_distance(out.free_.im, out.exact.im);
  out.dist_classical_im = dos_distance(out.classical.im, out.exact.im);
  return out;
}

}  // namespace fh
