#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fh/symbol.hpp"

namespace fh {

// One matrix's eigendecomposition. After order_by_momentum the arrays are in
// momentum order (ascending Re p); straight out of eig_full they are in the
// solver's Schur order.
struct Spectrum {
  int n = 0;
  Eigen::VectorXcd values;
  Eigen::MatrixXcd right;   // columns, unit 2-norm
  Eigen::MatrixXcd left;    // rows of inverse(right), biorthogonal to `right`
  Eigen::VectorXcd c;       // Eq.-11 normalization (sum_j psi_{n-1-j} psi_j)^-1
  Eigen::VectorXd kappa;    // per-eigenvalue condition numbers
  Eigen::VectorXcd momenta; // p^l, filled by order_by_momentum
  std::vector<int> order;   // permutation applied by order_by_momentum
  double matrix_norm = 0.0; // Frobenius norm of the input
  bool has_momenta = false;
};

Spectrum eig_full(const Eigen::MatrixXd& matrix);

Eigen::VectorXd condition_numbers(const Spectrum& spec);

// Invert the symbol at every eigenvalue and permute the spectrum into
// ascending Re p. Returns the permutation that was applied.
std::vector<int> order_by_momentum(Spectrum& spec, const SymbolParams& params);

// Eigenvalue paths across an ascending sigma grid, matched level to level.
// Path index = position in the level-0 spectrum (momentum order for sweeps).
struct TrajectorySet {
  std::vector<double> sigma_grid;
  Eigen::MatrixXcd values;             // (levels x n), values(k, label)
  Eigen::MatrixXd kappas;              // (levels x n)
  std::vector<std::vector<int>> cols;  // cols[k][label] = column in level-k spectrum
};

TrajectorySet track_trajectories(const std::vector<double>& sigmas,
                                 const std::vector<Spectrum>& spectra);

}  // namespace fh
