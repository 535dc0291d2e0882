#include "fh/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fh/errors.hpp"

namespace fh {

namespace {

// deterministic phase: largest-magnitude component made real positive
void fix_phases(Eigen::MatrixXcd& V) {
  const int n = static_cast<int>(V.cols());
  for (int j = 0; j < n; ++j) {
    int imax = 0;
    double best = -1.0;
    for (int i = 0; i < V.rows(); ++i) {
      const double m = std::abs(V(i, j));
      if (m > best + 1e-15) {
        best = m;
        imax = i;
      }
    }
    Complex z = V(imax, j);
    if (std::abs(z) > 0) V.col(j) *= std::conj(z) / std::abs(z);
    V.col(j) /= V.col(j).norm();
  }
}

double min_pairwise_gap(const Eigen::VectorXcd& w) {
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < w.size(); ++i)
    for (int j = i + 1; j < w.size(); ++j) gap = std::min(gap, std::abs(w(i) - w(j)));
  return gap;
}

}  // namespace

Spectrum eig_full(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() < 2)
    throw ValidationError("eig_full: matrix must be square, n >= 2");
  if (!matrix.allFinite()) throw ValidationError("eig_full: matrix has non-finite entries");

  Spectrum s;
  s.n = static_cast<int>(matrix.rows());
  s.matrix_norm = matrix.norm();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(matrix, true);
  if (solver.info() != Eigen::Success) throw Error("eig_full: QR iteration failed");
  s.values = solver.eigenvalues();
  s.right = solver.eigenvectors();

  const double gap = min_pairwise_gap(s.values);
  if (!(gap > 1e-12 * s.matrix_norm))
    throw DegeneracyError("eig_full: numerically multiple spectrum", gap);

  fix_phases(s.right);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s.right);
  Eigen::MatrixXcd inv = lu.inverse();
  const double cond1 = s.right.cwiseAbs().colwise().sum().maxCoeff() *
                       inv.cwiseAbs().colwise().sum().maxCoeff();
  if (cond1 > 1e14)
    throw IllPosedBasisError("eig_full: eigenvector basis too ill-conditioned", cond1);
  s.left = inv;

  s.c.resize(s.n);
  s.kappa.resize(s.n);
  for (int l = 0; l < s.n; ++l) {
    Complex pairing{0.0, 0.0};
    for (int j = 0; j < s.n; ++j) pairing += s.right(s.n - 1 - j, l) * s.right(j, l);
    s.c(l) = 1.0 / pairing;
    const Complex inner = s.left.row(l) * s.right.col(l);
    s.kappa(l) = s.left.row(l).norm() * s.right.col(l).norm() / std::abs(inner);
  }
  s.order.resize(s.n);
  std::iota(s.order.begin(), s.order.end(), 0);
  return s;
}

Eigen::VectorXd condition_numbers(const Spectrum& spec) {
  Eigen::VectorXd k(spec.n);
  for (int l = 0; l < spec.n; ++l) {
    const Complex inner = spec.left.row(l) * spec.right.col(l);
    k(l) = spec.left.row(l).norm() * spec.right.col(l).norm() / std::abs(inner);
  }
  return k;
}

std::vector<int> order_by_momentum(Spectrum& spec, const SymbolParams& params) {
  const int n = spec.n;
  // seed table along the asymptotic momentum line
  std::vector<Complex> seeds(n), seed_values(n);
  for (int l = 1; l <= n; ++l) {
    seeds[l - 1] = asymptotic_momentum(n, l, params).p;
    seed_values[l - 1] = eval_symbol(params, seeds[l - 1]);
  }
  spec.momenta.resize(n);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (int l = 0; l < n; ++l) {
      const double d = std::abs(seed_values[l] - spec.values(i));
      if (d < bd) {
        bd = d;
        best = l;
      }
    }
    try {
      spec.momenta(i) = invert_symbol(params, spec.values(i), seeds[best]).p;
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("order_by_momentum: inversion failed at eigenvalue index " +
                                 std::to_string(i),
                             e.target, e.residual);
    }
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return spec.momenta(a).real() < spec.momenta(b).real(); });

  Spectrum t = spec;
  for (int r = 0; r < n; ++r) {
    const int src = perm[r];
    t.values(r) = spec.values(src);
    t.right.col(r) = spec.right.col(src);
    t.left.row(r) = spec.left.row(src);
    t.c(r) = spec.c(src);
    t.kappa(r) = spec.kappa(src);
    t.momenta(r) = spec.momenta(src);
  }
  t.order = perm;
  t.has_momenta = true;
  spec = std::move(t);
  return spec.order;
}

namespace {

struct Assignment {
  std::vector<int> target_of;  // per source label
};

Assignment match_level(const Eigen::VectorXcd& prev_values, const Eigen::MatrixXcd& prev_vecs,
                       const Spectrum& next, double sigma_k) {
  const int n = static_cast<int>(prev_values.size());
  Eigen::MatrixXd dist(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) dist(a, b) = std::abs(prev_values(a) - next.values(b));

  std::vector<int> source_order(n);
  std::iota(source_order.begin(), source_order.end(), 0);
  Eigen::VectorXd mins = dist.rowwise().minCoeff();
  std::sort(source_order.begin(), source_order.end(),
            [&](int a, int b) { return mins(a) < mins(b); });

  std::vector<bool> used(n, false);
  Assignment out;
  out.target_of.assign(n, -1);

  for (int a : source_order) {
    int b1 = -1, b2 = -1;
    double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
    for (int b = 0; b < n; ++b) {
      if (used[b]) continue;
      const double d = dist(a, b);
      if (d < d1) {
        d2 = d1;
        b2 = b1;
        d1 = d;
        b1 = b;
      } else if (d < d2) {
        d2 = d;
        b2 = b;
      }
    }
    int chosen = b1;
    if (b2 >= 0 && d2 <= 1.1 * d1) {
      const double o1 = std::abs(next.right.col(b1).dot(prev_vecs.col(a)));
      const double o2 = std::abs(next.right.col(b2).dot(prev_vecs.col(a)));
      if (o2 >= 1.1 * o1) {
        chosen = b2;
      } else if (o1 >= 1.1 * o2) {
        chosen = b1;
      } else {
        // overlaps inconclusive too; when the candidate vectors are nearly
        // parallel (just-collided pair or same dense branch) the label choice
        // is immaterial, so take the nearer one deterministically
        const double t12 = std::abs(next.right.col(b1).dot(next.right.col(b2)));
        if (t12 <= 0.7)
          throw GridTooCoarseError("track_trajectories: ambiguous matching at sigma", sigma_k);
        chosen = (d1 < d2 || (d1 == d2 && b1 < b2)) ? b1 : b2;
      }
    }
    out.target_of[a] = chosen;
    used[chosen] = true;
  }
  return out;
}

}  // namespace

TrajectorySet track_trajectories(const std::vector<double>& sigmas,
                                 const std::vector<Spectrum>& spectra) {
  if (sigmas.size() != spectra.size() || spectra.empty())
    throw ValidationError("track_trajectories: grid/spectra size mismatch");
  for (std::size_t k = 1; k < sigmas.size(); ++k)
    if (!(sigmas[k] > sigmas[k - 1]))
      throw ValidationError("track_trajectories: sigma grid must be ascending");

  const int n = spectra.front().n;
  const int levels = static_cast<int>(spectra.size());
  TrajectorySet ts;
  ts.sigma_grid = sigmas;
  ts.values.resize(levels, n);
  ts.kappas.resize(levels, n);
  ts.cols.assign(levels, std::vector<int>(n));

  for (int l = 0; l < n; ++l) {
    ts.values(0, l) = spectra[0].values(l);
    ts.kappas(0, l) = spectra[0].kappa(l);
    ts.cols[0][l] = l;
  }
  Eigen::VectorXcd prev_values = spectra[0].values;
  Eigen::MatrixXcd prev_vecs = spectra[0].right;

  for (int k = 1; k < levels; ++k) {
    const Spectrum& next = spectra[k];
    if (next.n != n) throw ValidationError("track_trajectories: dimension changed across grid");
    Assignment asg = match_level(prev_values, prev_vecs, next, sigmas[k]);
    for (int label = 0; label < n; ++label) {
      const int b = asg.target_of[label];
      ts.values(k, label) = next.values(b);
      ts.kappas(k, label) = next.kappa(b);
      ts.cols[k][label] = b;
      prev_values(label) = next.values(b);
      prev_vecs.col(label) = next.right.col(b);
    }
  }
  return ts;
}

}  // namespace fh
