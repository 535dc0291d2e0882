#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fh/disorder.hpp"
#include "fh/spectral.hpp"

namespace fh {

// sigma * e_j e_k^T added to T (0-based row j, column k).
struct RankOnePerturbation {
  int j = 0;
  int k = 0;
  double sigma = 0.0;
};

// [R(lambda)]_{kj} = sum_m psi^m_k lpsi^m_j / (E^m - lambda).
Complex resolvent_entry(const Spectrum& spec, Complex lambda, int k, int j);

// |[R(lambda)]_{kj} + 1/sigma| at every eigenvalue of T + sigma A_{jk}.
Eigen::VectorXd rank1_root_check(const Spectrum& spec, const RankOnePerturbation& pert,
                                 const Eigen::VectorXcd& perturbed_eigenvalues);

// <lpsi^l| A_{jk} |psi^l> = lpsi^l_j psi^l_k per eigenpair.
Eigen::VectorXcd rank1_first_order(const Spectrum& spec, int j, int k);

// Winding of the closed E1 polyline (in the given order) about the centroid
// of its convex hull.
int correction_winding(const std::vector<Complex>& corrections);

enum class RankOneFamily { DiagJJ, Row1K, ColJ1 };

RankOneFamily family_from_string(const std::string& s);
const char* to_string(RankOneFamily f);

struct RunawayRecord {
  int label = 0;            // momentum-order index at sigma = 0 (0-based)
  Complex final_value;
  double kappa_max = 0.0;
  bool inward = false;      // sign of d|E - centroid|/dsigma over the last grid quarter
  bool collided = false;    // belongs to a real-collapsed conjugate pair
};

struct RunawayCensus {
  SymbolParams params{0.0, 0.0};
  int n = 0;
  RankOneFamily family = RankOneFamily::DiagJJ;
  int index = 0;  // 1-based site index, matching the conjecture statements
  double sigma_max = 0.0;
  // trajectories displaced from the unperturbed spectrum by more than
  // dist_threshold at sigma_max
  int count_type_II = 0;
  int count_inward = 0;
  int count_outward = 0;
  int count_real_collisions = 0;  // collided conjugate pairs
  int winding_of_E1 = 0;
  double dist_threshold = 0.0;
  std::vector<RunawayRecord> per_runaway;
};

RunawayCensus runaway_census(const SymbolParams& params, int n, RankOneFamily family, int index,
                             double sigma_max, int grid_points = 64);

void export_census_json(const RunawayCensus& census, const std::string& path);

}  // namespace fh
