#include "fh/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fh/errors.hpp"

namespace fh {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("fnv1a64_file: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ull;
    }
  }
  return h;
}

RunManifest::RunManifest(std::string output_dir, std::string experiment)
    : dir_(std::move(output_dir)) {
  std::filesystem::create_directories(dir_);
  doc_["experiment"] = std::move(experiment);
  doc_["tool"] = "fhspec";
  doc_["version"] = "1.0.0";
}

void RunManifest::set_params(const nlohmann::json& params) { doc_["parameters"] = params; }

void RunManifest::record(const std::string& path) { files_.push_back(path); }

std::string RunManifest::write() {
  nlohmann::json files = nlohmann::json::array();
  for (const std::string& f : files_) {
    char hex[24];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a64_file(f)));
    files.push_back({{"path", std::filesystem::path(f).filename().string()},
                     {"bytes", std::filesystem::file_size(f)},
                     {"fnv1a64", hex}});
  }
  doc_["files"] = files;
  const std::string path = dir_ + "/manifest.json";
  std::ofstream out(path);
  if (!out) throw Error("RunManifest: cannot open " + path);
  out << doc_.dump(2) << "\n";
  return path;
}

void export_spectrum_csv(const Spectrum& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("export_spectrum_csv: cannot open " + path);
  out << "order_index,re_E,im_E,re_p,im_p,kappa,abs_c\n";
  for (int l = 0; l < spec.n; ++l) {
    const Complex p = spec.has_momenta ? spec.momenta(l) : Complex(0, 0);
    out << (l + 1) << ',' << fmt17(spec.values(l).real()) << ',' << fmt17(spec.values(l).imag())
        << ',' << fmt17(p.real()) << ',' << fmt17(p.imag()) << ',' << fmt17(spec.kappa(l)) << ','
        << fmt17(std::abs(spec.c(l))) << "\n";
  }
}

void export_eigenvectors_binary(const Spectrum& spec, const std::string& bin_path,
                                const std::string& header_path) {
  std::ofstream bin(bin_path, std::ios::binary);
  if (!bin) throw Error("export_eigenvectors_binary: cannot open " + bin_path);
  for (int l = 0; l < spec.n; ++l) {
    for (int j = 0; j < spec.n; ++j) {
      const double re = spec.right(j, l).real();
      const double im = spec.right(j, l).imag();
      bin.write(reinterpret_cast<const char*>(&re), sizeof re);
      bin.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }
  nlohmann::json h;
  h["n"] = spec.n;
  h["layout"] = "row-major, one right eigenvector per row, float64 interleaved re/im";
  h["order"] = spec.has_momenta ? "momentum" : "solver";
  std::ofstream head(header_path);
  if (!head) throw Error("export_eigenvectors_binary: cannot open " + header_path);
  head << h.dump(2) << "\n";
}

void export_report_csv(const PerturbationReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("export_report_csv: cannot open " + path);
  out << "order_index,re_E0,im_E0,re_E1,im_E1,re_E2,im_E2,re_predicted,im_predicted,"
         "re_expectedE2,im_expectedE2,predicted_kappa\n";
  for (int l = 0; l < report.E0.size(); ++l) {
    out << (l + 1) << ',' << fmt17(report.E0(l).real()) << ',' << fmt17(report.E0(l).imag()) << ','
        << fmt17(report.E1(l).real()) << ',' << fmt17(report.E1(l).imag()) << ','
        << fmt17(report.E2(l).real()) << ',' << fmt17(report.E2(l).imag()) << ','
        << fmt17(report.predicted(l).real()) << ',' << fmt17(report.predicted(l).imag()) << ','
        << fmt17(report.expectedE2(l).real()) << ',' << fmt17(report.expectedE2(l).imag()) << ','
        << fmt17(report.predicted_kappa(l)) << "\n";
  }
}

void export_histogram_csv(const DosHistogram& hist, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("export_histogram_csv: cannot open " + path);
  out << "bin_left,bin_right,mass\n";
  for (std::size_t b = 0; b < hist.mass.size(); ++b)
    out << fmt17(hist.edges[b]) << ',' << fmt17(hist.edges[b + 1]) << ',' << fmt17(hist.mass[b])
        << "\n";
}

void export_profiles_csv(const std::vector<LocalizationProfile>& profiles,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("export_profiles_csv: cannot open " + path);
  out << "order_index,entropy,ipr,argmax,class,exp_rate,alg_power\n";
  for (std::size_t l = 0; l < profiles.size(); ++l) {
    const LocalizationProfile& p = profiles[l];
    out << (l + 1) << ',' << fmt17(p.entropy) << ',' << fmt17(p.ipr) << ',' << p.argmax_index
        << ',' << to_string(p.decay_class) << ',' << fmt17(p.exp_rate) << ','
        << fmt17(p.alg_power) << "\n";
  }
}

}  // namespace fh
