#include "fh/disorder.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "fh/errors.hpp"
#include "fh/parallel.hpp"

namespace fh {

const char* to_string(EigClass c) {
  switch (c) {
    case EigClass::Bulk: return "Bulk";
    case EigClass::RunawayI: return "RunawayI";
    case EigClass::RunawayII: return "RunawayII";
  }
  return "?";
}

double spectrum_diameter(const Eigen::VectorXcd& values) {
  double d = 0.0;
  for (int i = 0; i < values.size(); ++i)
    for (int j = i + 1; j < values.size(); ++j) d = std::max(d, std::abs(values(i) - values(j)));
  return d;
}

namespace {

// first grid index from which the trajectory stays real, or -1
int collapse_index(const TrajectorySet& traj, int label, double eps_real) {
  const int levels = static_cast<int>(traj.sigma_grid.size());
  int k = levels;
  for (int i = levels - 1; i >= 1; --i) {
    if (std::abs(traj.values(i, label).imag()) <= eps_real)
      k = i;
    else
      break;
  }
  return k < levels ? k : -1;
}

// realness test for the colliding pair only; the full matcher is deliberately
// avoided this close to the collision
bool pair_real_at(const MatrixBuilder& builder, double sigma, Complex around, double eps_real) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(builder(sigma), false);
  const Eigen::VectorXcd w = solver.eigenvalues();
  int i1 = -1, i2 = -1;
  double d1 = 1e300, d2 = 1e300;
  for (int i = 0; i < w.size(); ++i) {
    const double d = std::min(std::abs(w(i) - around), std::abs(w(i) - std::conj(around)));
    if (d < d1) {
      d2 = d1;
      i2 = i1;
      d1 = d;
      i1 = i;
    } else if (d < d2) {
      d2 = d;
      i2 = i;
    }
  }
  return std::abs(w(i1).imag()) <= eps_real && std::abs(w(i2).imag()) <= eps_real;
}

double bisect_collision(const MatrixBuilder& builder, double lo, double hi, Complex around,
                        double eps_real) {
  // lo: last non-real grid point, hi: first real one
  while (hi - lo > 1e-4) {
    const double mid = 0.5 * (lo + hi);
    if (pair_real_at(builder, mid, around, eps_real))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

std::vector<ClassLabel> classify_eigenpairs(const TrajectorySet& traj,
                                            const Eigen::VectorXcd& predicted_at_max,
                                            const ClassThresholds& thresholds,
                                            const MatrixBuilder& builder) {
  const int n = static_cast<int>(traj.values.cols());
  const int levels = static_cast<int>(traj.sigma_grid.size());
  const Eigen::VectorXcd e0 = traj.values.row(0);
  const double diameter = spectrum_diameter(e0);
  const double eps_real = thresholds.eps_real_rel * diameter;

  Eigen::VectorXd kappa0 = traj.kappas.row(0);
  std::vector<double> k0(kappa0.data(), kappa0.data() + n);
  std::nth_element(k0.begin(), k0.begin() + n / 2, k0.end());
  const double median_kappa0 = k0[n / 2];

  std::vector<int> collapse(n, -1);
  for (int l = 0; l < n; ++l)
    if (std::abs(e0(l).imag()) > eps_real) collapse[l] = collapse_index(traj, l, eps_real);

  // conjugate partner at sigma = 0
  std::vector<int> partner(n, -1);
  for (int l = 0; l < n; ++l) {
    if (std::abs(e0(l).imag()) <= eps_real) continue;
    double bd = 1e300;
    for (int j = 0; j < n; ++j) {
      if (j == l) continue;
      const double d = std::abs(e0(j) - std::conj(e0(l)));
      if (d < bd) {
        bd = d;
        partner[l] = j;
      }
    }
    if (bd > 1e-6 * (1.0 + std::abs(e0(l)))) partner[l] = -1;
  }

  std::vector<ClassLabel> labels(n);
  for (int l = 0; l < n; ++l) {
    ClassLabel& lab = labels[l];
    lab.kappa_ratio = traj.kappas.col(l).maxCoeff() / median_kappa0;
    lab.pred_error = std::abs(traj.values(levels - 1, l) - predicted_at_max(l));

    const bool self_collapses = collapse[l] >= 0;
    const bool partner_collapses =
        partner[l] >= 0 && collapse[partner[l]] >= 0;
    if (self_collapses && partner_collapses) {
      lab.cls = EigClass::RunawayI;
      const int k = collapse[l];
      if (builder) {
        lab.collision_sigma = bisect_collision(builder, traj.sigma_grid[k - 1],
                                               traj.sigma_grid[k], traj.values(k, l), eps_real);
      } else {
        lab.collision_sigma = traj.sigma_grid[k];
      }
    } else if (lab.kappa_ratio >= thresholds.kappa_ratio) {
      lab.cls = EigClass::RunawayII;
    } else {
      lab.cls = EigClass::Bulk;
    }
  }
  return labels;
}

SigmaSweep sigma_sweep(const SymbolParams& params, int n, const DiagonalPerturbation& V,
                       const std::vector<double>& sigma_grid, std::uint64_t seed,
                       const ClassThresholds& thresholds) {
  if (sigma_grid.empty() || sigma_grid.front() != 0.0)
    throw ValidationError("sigma_sweep: grid must be ascending and start at 0");
  if (V.v.size() != n) throw ValidationError("sigma_sweep: V dimension mismatch");
  if (!V.is_real())
    throw ValidationError("sigma_sweep: complex disorder goes through complex_disorder_tracks");

  const ToeplitzMatrix T = build_toeplitz(params, n);
  const Eigen::MatrixXd Vre = V.v.real().asDiagonal();

  std::vector<Spectrum> spectra(sigma_grid.size());
  parallel_for(sigma_grid.size(), [&](std::size_t k) {
    Eigen::MatrixXd M = T.entries + sigma_grid[k] * Vre;
    spectra[k] = eig_full(M);
  });
  order_by_momentum(spectra[0], params);

  SigmaSweep sweep;
  sweep.params = params;
  sweep.n = n;
  sweep.seed = seed;
  sweep.V = V;
  sweep.sigma_grid = sigma_grid;
  sweep.thresholds = thresholds;
  sweep.spectrum0 = spectra[0];
  sweep.spectrum_final = spectra.back();
  sweep.trajectories = track_trajectories(sigma_grid, spectra);
  sweep.diameter = spectrum_diameter(spectra[0].values);
  sweep.report0 = make_report(sweep.spectrum0, V, sigma_grid.back());

  MatrixBuilder builder = [T, Vre](double s) -> Eigen::MatrixXd { return T.entries + s * Vre; };
  sweep.labels =
      classify_eigenpairs(sweep.trajectories, sweep.report0.predicted, thresholds, builder);
  return sweep;
}

Eigen::MatrixXcd complex_disorder_tracks(const SymbolParams& params, int n,
                                         const Eigen::VectorXcd& v,
                                         const std::vector<double>& sigma_grid) {
  const ToeplitzMatrix T = build_toeplitz(params, n);
  const int levels = static_cast<int>(sigma_grid.size());
  Eigen::MatrixXcd tracks(levels, n);

  std::vector<Eigen::VectorXcd> values(levels);
  parallel_for(sigma_grid.size(), [&](std::size_t k) {
    Eigen::MatrixXcd M = T.entries.cast<Complex>();
    M += sigma_grid[k] * Eigen::MatrixXcd(v.asDiagonal());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, false);
    values[k] = solver.eigenvalues();
  });

  tracks.row(0) = values[0].transpose();
  for (int k = 1; k < levels; ++k) {
    std::vector<bool> used(n, false);
    for (int label = 0; label < n; ++label) {
      int best = -1;
      double bd = 1e300;
      for (int b = 0; b < n; ++b) {
        if (used[b]) continue;
        const double d = std::abs(values[k](b) - tracks(k - 1, label));
        if (d < bd) {
          bd = d;
          best = b;
        }
      }
      used[best] = true;
      tracks(k, label) = values[k](best);
    }
  }
  return tracks;
}

}  // namespace fh
