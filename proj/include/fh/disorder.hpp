#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fh/perturbation.hpp"
#include "fh/spectral.hpp"
#include "fh/toeplitz.hpp"

namespace fh {

enum class EigClass { Bulk, RunawayI, RunawayII };

const char* to_string(EigClass c);

struct ClassLabel {
  EigClass cls = EigClass::Bulk;
  std::optional<double> collision_sigma;  // RunawayI only, bisected to 1e-4
  double kappa_ratio = 0.0;               // max_sigma kappa / median kappa at sigma=0
  double pred_error = 0.0;                // |E(sigma_max) - (E0 + s E1 + s^2 E2)|
};

struct ClassThresholds {
  double eps_real_rel = 1e-6;   // x spectrum diameter
  double kappa_ratio = 10.0;
  double pred_tol_rel = 0.05;   // x spectrum diameter
};

// Rebuilds the perturbed matrix at an arbitrary sigma (for collision bisection).
using MatrixBuilder = std::function<Eigen::MatrixXd(double)>;

std::vector<ClassLabel> classify_eigenpairs(const TrajectorySet& traj,
                                            const Eigen::VectorXcd& predicted_at_max,
                                            const ClassThresholds& thresholds,
                                            const MatrixBuilder& builder);

struct SigmaSweep {
  SymbolParams params{0.0, 0.0};
  int n = 0;
  std::uint64_t seed = 0;
  DiagonalPerturbation V;
  std::vector<double> sigma_grid;
  Spectrum spectrum0;       // momentum-ordered, sigma = 0
  Spectrum spectrum_final;  // raw solver order; reach it through trajectories.cols
  TrajectorySet trajectories;
  PerturbationReport report0;
  std::vector<ClassLabel> labels;
  ClassThresholds thresholds;
  double diameter = 0.0;
};

SigmaSweep sigma_sweep(const SymbolParams& params, int n, const DiagonalPerturbation& V,
                       const std::vector<double>& sigma_grid, std::uint64_t seed,
                       const ClassThresholds& thresholds = {});

double spectrum_diameter(const Eigen::VectorXcd& values);

// Eigenvalue trajectories of T + sigma diag(v) for complex v (values only,
// proximity matching); the complex-disorder control has no real collisions
// to disambiguate.
Eigen::MatrixXcd complex_disorder_tracks(const SymbolParams& params, int n,
                                         const Eigen::VectorXcd& v,
                                         const std::vector<double>& sigma_grid);

}  // namespace fh
