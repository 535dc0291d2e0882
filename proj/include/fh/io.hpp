#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fh/disorder.hpp"
#include "fh/freeprob.hpp"
#include "fh/localization.hpp"
#include "fh/perturbation.hpp"
#include "fh/spectral.hpp"

namespace fh {

// shortest-exact decimal form, stable across runs
std::string fmt17(double x);

std::uint64_t fnv1a64_file(const std::string& path);

// Collects written files and closes with a manifest carrying parameters,
// seed, tool version, and one content hash per file.
class RunManifest {
 public:
  RunManifest(std::string output_dir, std::string experiment);
  void set_params(const nlohmann::json& params);
  void record(const std::string& path);
  std::string write();  // returns manifest path

 private:
  std::string dir_;
  nlohmann::json doc_;
  std::vector<std::string> files_;
};

// CSV columns: order_index, re_E, im_E, re_p, im_p, kappa, abs_c.
// The spectrum must be momentum-ordered.
void export_spectrum_csv(const Spectrum& spec, const std::string& path);

// Row-major 8-byte floats, interleaved Re/Im, with a JSON header sidecar.
void export_eigenvectors_binary(const Spectrum& spec, const std::string& bin_path,
                                const std::string& header_path);

// order_index, re/im of E0 E1 E2 predicted expectedE2, predicted_kappa.
void export_report_csv(const PerturbationReport& report, const std::string& path);

// bin_left, bin_right, mass.
void export_histogram_csv(const DosHistogram& hist, const std::string& path);

void export_profiles_csv(const std::vector<LocalizationProfile>& profiles,
                         const std::string& path);

}  // namespace fh
