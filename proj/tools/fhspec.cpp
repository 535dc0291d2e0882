// fhspec: reproducible experiment runner for the Fisher-Hartwig Toeplitz lab.
// Subcommands emit the data files behind the standard experiments; every run
// writes a manifest with parameters, seed, and content hashes.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fh/disorder.hpp"
#include "fh/errors.hpp"
#include "fh/freeprob.hpp"
#include "fh/io.hpp"
#include "fh/localization.hpp"
#include "fh/rank1.hpp"
#include "fh/rng.hpp"
#include "fh/spectral.hpp"
#include "fh/toeplitz.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  double alpha = 1.0 / 3.0;
  double beta = -0.5;
  int n = 160;
  std::uint64_t seed = 42;
  std::string out;
  std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& o, const std::string& default_out) {
  o.out = default_out;
  cmd->add_option("--alpha", o.alpha, "symbol zero exponent");
  cmd->add_option("--beta", o.beta, "symbol jump exponent");
  cmd->add_option("--n", o.n, "matrix dimension");
  cmd->add_option("--seed", o.seed, "master RNG seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--config", o.config, "JSON config file (flags win over file)");
}

// flags > config file > defaults
void apply_config(CLI::App* cmd, CommonOpts& o) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw fh::ValidationError("config file not readable: " + o.config);
  nlohmann::json j;
  in >> j;
  auto maybe = [&](const char* flag, auto& slot) {
    const std::string key = flag + 2;  // strip "--"
    if (cmd->count(flag) == 0 && j.contains(key)) slot = j.at(key);
  };
  maybe("--alpha", o.alpha);
  maybe("--beta", o.beta);
  maybe("--n", o.n);
  maybe("--seed", o.seed);
  if (cmd->count("--out") == 0 && j.contains("out")) o.out = j.at("out");
}

nlohmann::json base_params(const CommonOpts& o) {
  return {{"alpha", o.alpha}, {"beta", o.beta}, {"n", o.n}, {"seed", o.seed}};
}

std::vector<double> linear_grid(double max, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = max * i / (points - 1);
  return g;
}

fh::Spectrum ordered_spectrum(const fh::SymbolParams& params, int n) {
  fh::ToeplitzMatrix T = fh::build_toeplitz(params, n);
  fh::Spectrum spec = fh::eig_full(T.entries);
  fh::order_by_momentum(spec, params);
  return spec;
}

int run_build(const CommonOpts& o) {
  fh::SymbolParams params{o.alpha, o.beta};
  fh::ToeplitzMatrix T = fh::build_toeplitz(params, o.n);
  fh::RunManifest manifest(o.out, "build");
  manifest.set_params(base_params(o));
  const std::string csv = o.out + "/matrix.csv";
  const std::string side = o.out + "/matrix.json";
  fh::export_matrix_csv(T, csv, side);
  manifest.record(csv);
  manifest.record(side);
  manifest.write();
  return 0;
}

int run_spectrum(const CommonOpts& o, int curve_points) {
  fh::SymbolParams params{o.alpha, o.beta};
  fh::Spectrum spec = ordered_spectrum(params, o.n);

  fh::RunManifest manifest(o.out, "spectrum");
  nlohmann::json p = base_params(o);
  p["curve_points"] = curve_points;
  manifest.set_params(p);

  const std::string spec_csv = o.out + "/spectrum.csv";
  fh::export_spectrum_csv(spec, spec_csv);
  manifest.record(spec_csv);

  const std::string curve_csv = o.out + "/symbol_image.csv";
  {
    std::ofstream out(curve_csv);
    out << "p,re_a,im_a\n";
    for (int k = 0; k < curve_points; ++k) {
      const double pk = 2.0 * M_PI * (k + 0.5) / curve_points;
      const fh::Complex a = fh::eval_symbol(params, pk);
      out << fh::fmt17(pk) << ',' << fh::fmt17(a.real()) << ',' << fh::fmt17(a.imag()) << "\n";
    }
  }
  manifest.record(curve_csv);

  const std::string vec_bin = o.out + "/eigenvectors.bin";
  const std::string vec_hdr = o.out + "/eigenvectors.json";
  fh::export_eigenvectors_binary(spec, vec_bin, vec_hdr);
  manifest.record(vec_bin);
  manifest.record(vec_hdr);
  manifest.write();
  return 0;
}

int run_momenta(const CommonOpts& o) {
  fh::SymbolParams params{o.alpha, o.beta};
  fh::Spectrum spec = ordered_spectrum(params, o.n);
  fh::RunManifest manifest(o.out, "momenta");
  manifest.set_params(base_params(o));
  const std::string csv = o.out + "/momentum_increments.csv";
  {
    std::ofstream out(csv);
    out << "ell,re_p,im_p,re_dp,im_dp\n";
    for (int l = 0; l < spec.n; ++l) {
      const fh::Complex p = spec.momenta(l);
      const fh::Complex dp = (l + 1 < spec.n) ? spec.momenta(l + 1) - p : fh::Complex(0, 0);
      out << (l + 1) << ',' << fh::fmt17(p.real()) << ',' << fh::fmt17(p.imag()) << ','
          << fh::fmt17(dp.real()) << ',' << fh::fmt17(dp.imag()) << "\n";
    }
  }
  manifest.record(csv);
  manifest.write();
  return 0;
}

int run_sweep(const CommonOpts& o, double sigma_max, int points, bool complex_v,
              const fh::ClassThresholds& thresholds) {
  fh::SymbolParams params{o.alpha, o.beta};
  fh::CounterRng rng(o.seed, "sweep-v");

  fh::RunManifest manifest(o.out, "sweep");
  nlohmann::json p = base_params(o);
  p["sigma_max"] = sigma_max;
  p["points"] = points;
  p["complex_v"] = complex_v;
  p["thresholds"] = {{"eps_real_rel", thresholds.eps_real_rel},
                     {"kappa_ratio", thresholds.kappa_ratio},
                     {"pred_tol_rel", thresholds.pred_tol_rel}};
  manifest.set_params(p);

  const std::vector<double> grid = linear_grid(sigma_max, points);

  if (complex_v) {
    fh::DiagonalPerturbation V = fh::DiagonalPerturbation::standard_complex_normal(o.n, rng);
    Eigen::MatrixXcd tracks = fh::complex_disorder_tracks(params, o.n, V.v, grid);
    const std::string csv = o.out + "/complex_tracks.csv";
    std::ofstream out(csv);
    out << "sigma";
    for (int l = 0; l < o.n; ++l) out << ",re_" << (l + 1) << ",im_" << (l + 1);
    out << "\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
      out << fh::fmt17(grid[k]);
      for (int l = 0; l < o.n; ++l)
        out << ',' << fh::fmt17(tracks(k, l).real()) << ',' << fh::fmt17(tracks(k, l).imag());
      out << "\n";
    }
    out.close();
    manifest.record(csv);
    manifest.write();
    return 0;
  }

  fh::DiagonalPerturbation V = fh::DiagonalPerturbation::standard_normal(o.n, rng);
  fh::SigmaSweep sweep = fh::sigma_sweep(params, o.n, V, grid, o.seed, thresholds);

  for (std::size_t k = 0; k < grid.size(); ++k) {
    char name[64];
    std::snprintf(name, sizeof name, "/trajectory_%03zu.csv", k);
    const std::string csv = o.out + name;
    std::ofstream out(csv);
    out << "label,sigma,re_E,im_E,kappa\n";
    for (int l = 0; l < o.n; ++l)
      out << (l + 1) << ',' << fh::fmt17(grid[k]) << ','
          << fh::fmt17(sweep.trajectories.values(k, l).real()) << ','
          << fh::fmt17(sweep.trajectories.values(k, l).imag()) << ','
          << fh::fmt17(sweep.trajectories.kappas(k, l)) << "\n";
    out.close();
    manifest.record(csv);
  }

  const std::string spec_csv = o.out + "/spectrum_sigma0.csv";
  fh::export_spectrum_csv(sweep.spectrum0, spec_csv);
  manifest.record(spec_csv);

  const std::string rep_csv = o.out + "/perturbation_report.csv";
  fh::export_report_csv(sweep.report0, rep_csv);
  manifest.record(rep_csv);

  nlohmann::json labels = nlohmann::json::array();
  for (int l = 0; l < o.n; ++l) {
    const fh::ClassLabel& lab = sweep.labels[l];
    nlohmann::json e = {{"label", l + 1},
                        {"class", fh::to_string(lab.cls)},
                        {"kappa_ratio", lab.kappa_ratio},
                        {"pred_error", lab.pred_error}};
    if (lab.collision_sigma) e["collision_sigma"] = *lab.collision_sigma;
    labels.push_back(e);
  }
  const std::string lab_json = o.out + "/labels.json";
  {
    std::ofstream out(lab_json);
    out << nlohmann::json{{"diameter", sweep.diameter}, {"labels", labels}}.dump(2) << "\n";
  }
  manifest.record(lab_json);
  manifest.write();
  return 0;
}

int run_rank1(const CommonOpts& o, const std::string& family, int index, double sigma_max,
              int grid_points) {
  fh::SymbolParams params{o.alpha, o.beta};
  fh::RankOneFamily fam = fh::family_from_string(family);
  fh::RunawayCensus census = fh::runaway_census(params, o.n, fam, index, sigma_max, grid_points);

  fh::RunManifest manifest(o.out, "rank1");
  nlohmann::json p = base_params(o);
  p["family"] = family;
  p["index"] = index;
  p["sigma_max"] = sigma_max;
  p["grid_points"] = grid_points;
  manifest.set_params(p);

  const std::string census_json = o.out + "/census.json";
  fh::export_census_json(census, census_json);
  manifest.record(census_json);

  // first/second order corrections of the unperturbed matrix for this A_jk
  fh::Spectrum spec = ordered_spectrum(params, o.n);
  int row = 0, col = 0;
  switch (fam) {
    case fh::RankOneFamily::DiagJJ: row = col = index - 1; break;
    case fh::RankOneFamily::Row1K: row = 0; col = index - 1; break;
    case fh::RankOneFamily::ColJ1: row = index - 1; col = 0; break;
  }
  Eigen::VectorXcd e1 = fh::rank1_first_order(spec, row, col);
  const std::string corr_csv = o.out + "/corrections.csv";
  {
    std::ofstream out(corr_csv);
    out << "order_index,re_E1,im_E1\n";
    for (int l = 0; l < spec.n; ++l)
      out << (l + 1) << ',' << fh::fmt17(e1(l).real()) << ',' << fh::fmt17(e1(l).imag()) << "\n";
  }
  manifest.record(corr_csv);
  manifest.write();
  return 0;
}

int run_freeprob(const CommonOpts& o, double sigma, int trials, int bins) {
  fh::SymbolParams params{o.alpha, o.beta};
  fh::DosComparison cmp = fh::compare_dos(params, o.n, sigma, trials, o.seed, bins);

  fh::RunManifest manifest(o.out, "freeprob");
  nlohmann::json p = base_params(o);
  p["sigma"] = sigma;
  p["trials"] = trials;
  p["bins"] = bins;
  p["distances"] = {{"free_re", cmp.dist_free_re},
                    {"classical_re", cmp.dist_classical_re},
                    {"free_im", cmp.dist_free_im},
                    {"classical_im", cmp.dist_classical_im}};
  manifest.set_params(p);

  const struct {
    const char* name;
    const fh::DosHistogram* h;
  } files[] = {
      {"exact_re.csv", &cmp.exact.re},     {"exact_im.csv", &cmp.exact.im},
      {"free_re.csv", &cmp.free_.re},      {"free_im.csv", &cmp.free_.im},
      {"classical_re.csv", &cmp.classical.re}, {"classical_im.csv", &cmp.classical.im},
  };
  for (const auto& f : files) {
    const std::string path = o.out + "/" + f.name;
    fh::export_histogram_csv(*f.h, path);
    manifest.record(path);
  }
  manifest.write();
  return 0;
}

int run_localize(const CommonOpts& o, double sigma_max, int points,
                 const fh::ClassThresholds& thresholds) {
  fh::SymbolParams params{o.alpha, o.beta};
  fh::CounterRng rng(o.seed, "sweep-v");
  fh::DiagonalPerturbation V = fh::DiagonalPerturbation::standard_normal(o.n, rng);
  fh::SigmaSweep sweep =
      fh::sigma_sweep(params, o.n, V, linear_grid(sigma_max, points), o.seed, thresholds);

  std::vector<fh::LocalizationProfile> profiles(o.n);
  const int last = static_cast<int>(sweep.sigma_grid.size()) - 1;
  for (int l = 0; l < o.n; ++l) {
    const int col = sweep.trajectories.cols[last][l];
    profiles[l] = fh::decay_profile(sweep.spectrum_final.right.col(col));
  }

  fh::RunManifest manifest(o.out, "localize");
  nlohmann::json p = base_params(o);
  p["sigma_max"] = sigma_max;
  p["points"] = points;
  manifest.set_params(p);
  const std::string csv = o.out + "/profiles.csv";
  fh::export_profiles_csv(profiles, csv);
  manifest.record(csv);

  nlohmann::json classes = nlohmann::json::array();
  for (int l = 0; l < o.n; ++l)
    classes.push_back({{"label", l + 1}, {"class", fh::to_string(sweep.labels[l].cls)}});
  const std::string cls_json = o.out + "/classes.json";
  {
    std::ofstream out(cls_json);
    out << nlohmann::json{{"classes", classes}}.dump(2) << "\n";
  }
  manifest.record(cls_json);
  manifest.write();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fisher-Hartwig Toeplitz spectral laboratory"};
  app.require_subcommand(1);

  CommonOpts o_build, o_spec, o_mom, o_sweep, o_rank1, o_free, o_loc;
  int curve_points = 2048;
  double sweep_sigma_max = 0.5;
  int sweep_points = 21;
  bool sweep_complex = false;
  fh::ClassThresholds thresholds;
  std::string r1_family = "jj";
  int r1_index = 3;
  double r1_sigma_max = 20.0;
  int r1_grid = 64;
  double fp_sigma = 1.0;
  int fp_trials = 50;
  int fp_bins = 128;
  double loc_sigma_max = 0.5;
  int loc_points = 26;

  CLI::App* c_build = app.add_subcommand("build", "export the Toeplitz matrix");
  add_common(c_build, o_build, "out-build");

  CLI::App* c_spec = app.add_subcommand("spectrum", "exact spectrum and symbol image");
  add_common(c_spec, o_spec, "out-spectrum");
  c_spec->add_option("--curve-points", curve_points, "symbol image resolution");

  CLI::App* c_mom = app.add_subcommand("momenta", "momentum increments p^{l+1} - p^l");
  add_common(c_mom, o_mom, "out-momenta");

  CLI::App* c_sweep = app.add_subcommand("sweep", "diagonal-disorder sigma sweep");
  add_common(c_sweep, o_sweep, "out-sweep");
  c_sweep->add_option("--sigma-max", sweep_sigma_max, "largest sigma");
  c_sweep->add_option("--points", sweep_points, "grid points (linear from 0)");
  c_sweep->add_flag("--complex-v", sweep_complex, "complex disorder control run");
  c_sweep->add_option("--kappa-ratio", thresholds.kappa_ratio, "RunawayII threshold");
  c_sweep->add_option("--eps-real-rel", thresholds.eps_real_rel, "real-collapse tolerance");
  c_sweep->add_option("--pred-tol-rel", thresholds.pred_tol_rel, "bulk prediction tolerance");

  CLI::App* c_rank1 = app.add_subcommand("rank1", "rank-1 runaway census");
  add_common(c_rank1, o_rank1, "out-rank1");
  c_rank1->add_option("--family", r1_family, "jj | 1k | j1");
  c_rank1->add_option("--index", r1_index, "site index (1-based)");
  c_rank1->add_option("--sigma-max", r1_sigma_max, "largest sigma");
  c_rank1->add_option("--grid-points", r1_grid, "geometric grid points");

  CLI::App* c_free = app.add_subcommand("freeprob", "free vs classical DOS comparison");
  add_common(c_free, o_free, "out-freeprob");
  c_free->add_option("--sigma", fp_sigma, "disorder strength");
  c_free->add_option("--trials", fp_trials, "ensemble trials");
  c_free->add_option("--bins", fp_bins, "histogram bins");

  CLI::App* c_loc = app.add_subcommand("localize", "eigenvector localization profiles");
  add_common(c_loc, o_loc, "out-localize");
  c_loc->add_option("--sigma-max", loc_sigma_max, "largest sigma");
  c_loc->add_option("--points", loc_points, "grid points");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_build->parsed()) {
      apply_config(c_build, o_build);
      fh::SymbolParams{o_build.alpha, o_build.beta}.validate();
      return run_build(o_build);
    }
    if (c_spec->parsed()) {
      apply_config(c_spec, o_spec);
      fh::SymbolParams{o_spec.alpha, o_spec.beta}.validate();
      return run_spectrum(o_spec, curve_points);
    }
    if (c_mom->parsed()) {
      apply_config(c_mom, o_mom);
      fh::SymbolParams{o_mom.alpha, o_mom.beta}.validate();
      return run_momenta(o_mom);
    }
    if (c_sweep->parsed()) {
      apply_config(c_sweep, o_sweep);
      fh::SymbolParams{o_sweep.alpha, o_sweep.beta}.validate();
      return run_sweep(o_sweep, sweep_sigma_max, sweep_points, sweep_complex, thresholds);
    }
    if (c_rank1->parsed()) {
      apply_config(c_rank1, o_rank1);
      fh::SymbolParams{o_rank1.alpha, o_rank1.beta}.validate();
      return run_rank1(o_rank1, r1_family, r1_index, r1_sigma_max, r1_grid);
    }
    if (c_free->parsed()) {
      apply_config(c_free, o_free);
      fh::SymbolParams{o_free.alpha, o_free.beta}.validate();
      return run_freeprob(o_free, fp_sigma, fp_trials, fp_bins);
    }
    if (c_loc->parsed()) {
      apply_config(c_loc, o_loc);
      fh::SymbolParams{o_loc.alpha, o_loc.beta}.validate();
      return run_localize(o_loc, loc_sigma_max, loc_points, thresholds);
    }
  } catch (const fh::ValidationError& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return kExitValidation;
  } catch (const fh::Error& e) {
    std::fprintf(stderr, "error: numerical: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return 0;
}
