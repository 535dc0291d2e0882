#include "fh/rank1.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "fh/errors.hpp"
#include "fh/parallel.hpp"
#include "fh/toeplitz.hpp"

#include "json.hpp"

namespace fh {

Complex resolvent_entry(const Spectrum& spec, Complex lambda, int k, int j) {
  if (k < 0 || k >= spec.n || j < 0 || j >= spec.n)
    throw ValidationError("resolvent_entry: index out of range");
  Complex sum{0.0, 0.0};
  for (int m = 0; m < spec.n; ++m) {
    const Complex d = spec.values(m) - lambda;
    if (std::abs(d) < 1e-12 * (1.0 + std::abs(lambda)))
      throw PoleError("resolvent_entry: lambda at an eigenvalue");
    sum += spec.right(k, m) * spec.left(m, j) / d;
  }
  return sum;
}

Eigen::VectorXd rank1_root_check(const Spectrum& spec, const RankOnePerturbation& pert,
                                 const Eigen::VectorXcd& perturbed_eigenvalues) {
  if (pert.sigma == 0.0) throw ValidationError("rank1_root_check: sigma must be nonzero");
  Eigen::VectorXd residuals(perturbed_eigenvalues.size());
  for (int i = 0; i < perturbed_eigenvalues.size(); ++i) {
    const Complex r = resolvent_entry(spec, perturbed_eigenvalues(i), pert.k, pert.j);
    residuals(i) = std::abs(r + 1.0 / pert.sigma);
  }
  return residuals;
}

Eigen::VectorXcd rank1_first_order(const Spectrum& spec, int j, int k) {
  if (j < 0 || j >= spec.n || k < 0 || k >= spec.n)
    throw ValidationError("rank1_first_order: index out of range");
  Eigen::VectorXcd e1(spec.n);
  for (int l = 0; l < spec.n; ++l) e1(l) = spec.left(l, j) * spec.right(k, l);
  return e1;
}

namespace {

struct Pt {
  double x, y;
  bool operator<(const Pt& o) const { return x < o.x || (x == o.x && y < o.y); }
  bool operator==(const Pt& o) const { return x == o.x && y == o.y; }
};

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// area centroid of the convex hull (monotone chain)
Complex hull_centroid(const std::vector<Complex>& zs) {
  std::vector<Pt> p;
  p.reserve(zs.size());
  for (const Complex& z : zs) p.push_back({z.real(), z.imag()});
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) throw DegenerateWindingError("correction_winding: degenerate point set");
  std::vector<Pt> h(2 * p.size());
  std::size_t m = 0;
  for (const Pt& q : p) {
    while (m >= 2 && cross(h[m - 2], h[m - 1], q) <= 0) --m;
    h[m++] = q;
  }
  const std::size_t lower = m + 1;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    while (m >= lower && cross(h[m - 2], h[m - 1], *it) <= 0) --m;
    h[m++] = *it;
  }
  h.resize(m - 1);
  if (h.size() < 3) throw DegenerateWindingError("correction_winding: collinear corrections");
  double area2 = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const Pt& a = h[i];
    const Pt& b = h[(i + 1) % h.size()];
    const double w = a.x * b.y - b.x * a.y;
    area2 += w;
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  if (std::abs(area2) < 1e-300)
    throw DegenerateWindingError("correction_winding: flat convex hull");
  return {cx / (3.0 * area2), cy / (3.0 * area2)};
}

}  // namespace

int correction_winding(const std::vector<Complex>& corrections) {
  if (corrections.size() < 8)
    throw ValidationError("correction_winding: need at least 8 corrections");
  const Complex center = hull_centroid(corrections);
  return polyline_winding(corrections, center);
}

RankOneFamily family_from_string(const std::string& s) {
  if (s == "jj") return RankOneFamily::DiagJJ;
  if (s == "1k") return RankOneFamily::Row1K;
  if (s == "j1") return RankOneFamily::ColJ1;
  throw ValidationError("rank1 family must be one of jj, 1k, j1");
}

const char* to_string(RankOneFamily f) {
  switch (f) {
    case RankOneFamily::DiagJJ: return "jj";
    case RankOneFamily::Row1K: return "1k";
    case RankOneFamily::ColJ1: return "j1";
  }
  return "?";
}

RunawayCensus runaway_census(const SymbolParams& params, int n, RankOneFamily family, int index,
                             double sigma_max, int grid_points) {
  if (index < 1 || index > n) throw ValidationError("runaway_census: index out of range");
  if (family == RankOneFamily::DiagJJ && index >= n / 2)
    throw ValidationError("runaway_census: A_jj census needs index < n/2");

  int row = 0, col = 0;
  switch (family) {
    case RankOneFamily::DiagJJ: row = col = index - 1; break;
    case RankOneFamily::Row1K: row = 0; col = index - 1; break;
    case RankOneFamily::ColJ1: row = index - 1; col = 0; break;
  }

  const ToeplitzMatrix T = build_toeplitz(params, n);
  // geometric grid: runaway onset is fast near sigma = 0 and slow later
  std::vector<double> grid;
  grid.push_back(0.0);
  const double lo = 1e-3;
  for (int i = 0; i < grid_points; ++i)
    grid.push_back(lo * std::pow(sigma_max / lo, static_cast<double>(i) / (grid_points - 1)));

  std::vector<Spectrum> spectra(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    Eigen::MatrixXd M = T.entries;
    M(row, col) += grid[i];
    spectra[i] = eig_full(M);
  });
  order_by_momentum(spectra[0], params);
  const Eigen::VectorXcd e0 = spectra[0].values;

  TrajectorySet traj = track_trajectories(grid, spectra);

  RunawayCensus census;
  census.params = params;
  census.n = n;
  census.family = family;
  census.index = index;
  census.sigma_max = sigma_max;

  const double diameter = spectrum_diameter(e0);
  census.dist_threshold = 0.05 * diameter;
  const double eps_real = 1e-6 * diameter;
  const Complex centroid = e0.mean();
  const int levels = static_cast<int>(grid.size());

  // collapsed-pair bookkeeping (no bisection needed for the census)
  std::vector<bool> collapsed(n, false);
  for (int l = 0; l < n; ++l) {
    if (std::abs(e0(l).imag()) <= eps_real) continue;
    int k = levels;
    for (int i = levels - 1; i >= 1; --i) {
      if (std::abs(traj.values(i, l).imag()) <= eps_real)
        k = i;
      else
        break;
    }
    collapsed[l] = k < levels;
  }
  int collided_members = 0;
  for (int l = 0; l < n; ++l) {
    if (!collapsed[l]) continue;
    int partner = -1;
    double bd = 1e300;
    for (int j2 = 0; j2 < n; ++j2) {
      if (j2 == l) continue;
      const double d = std::abs(e0(j2) - std::conj(e0(l)));
      if (d < bd) {
        bd = d;
        partner = j2;
      }
    }
    if (partner >= 0 && collapsed[partner]) ++collided_members;
  }
  census.count_real_collisions = collided_members / 2;

  const int q3 = levels * 3 / 4;
  for (int l = 0; l < n; ++l) {
    const Complex final_value = traj.values(levels - 1, l);
    double dist = std::numeric_limits<double>::infinity();
    for (int m = 0; m < n; ++m) dist = std::min(dist, std::abs(final_value - e0(m)));
    if (dist <= census.dist_threshold) continue;
    RunawayRecord rec;
    rec.label = l;
    rec.final_value = final_value;
    rec.kappa_max = traj.kappas.col(l).maxCoeff();
    rec.inward =
        std::abs(traj.values(levels - 1, l) - centroid) < std::abs(traj.values(q3, l) - centroid);
    rec.collided = collapsed[l];
    census.per_runaway.push_back(rec);
    ++census.count_type_II;
    if (rec.inward)
      ++census.count_inward;
    else
      ++census.count_outward;
  }

  std::vector<Complex> e1(n);
  const Eigen::VectorXcd first = rank1_first_order(spectra[0], row, col);
  for (int l = 0; l < n; ++l) e1[l] = first(l);
  census.winding_of_E1 = correction_winding(e1);
  return census;
}

void export_census_json(const RunawayCensus& census, const std::string& path) {
  nlohmann::json j;
  j["family"] = to_string(census.family);
  j["index"] = census.index;
  j["n"] = census.n;
  j["alpha"] = census.params.alpha;
  j["beta"] = census.params.beta;
  j["sigma_max"] = census.sigma_max;
  j["dist_threshold"] = census.dist_threshold;
  j["count_type_II"] = census.count_type_II;
  j["count_inward"] = census.count_inward;
  j["count_outward"] = census.count_outward;
  j["count_real_collisions"] = census.count_real_collisions;
  j["winding_of_E1"] = census.winding_of_E1;
  nlohmann::json arr = nlohmann::json::array();
  for (const RunawayRecord& r : census.per_runaway) {
    arr.push_back({{"label", r.label + 1},
                   {"final_re", r.final_value.real()},
                   {"final_im", r.final_value.imag()},
                   {"kappa_max", r.kappa_max},
                   {"inward", r.inward},
                   {"collided", r.collided}});
  }
  j["per_runaway"] = arr;
  std::ofstream out(path);
  if (!out) throw Error("export_census_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace fh
