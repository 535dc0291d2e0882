#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "fh/rng.hpp"
#include "fh/spectral.hpp"

namespace fh {

enum class Axis { Re, Im };

struct DosHistogram {
  Axis axis = Axis::Re;
  std::vector<double> edges;  // bins + 1, ascending
  std::vector<double> mass;   // sums to 1
  long sample_count = 0;
};

DosHistogram make_histogram(const std::vector<double>& samples, Axis axis, int bins, double lo,
                            double hi);

// Kolmogorov distance between the piecewise-linear CDFs of two histograms.
double dos_distance(const DosHistogram& h1, const DosHistogram& h2);

// Gaussian matrix, Householder QR, sign-corrected R diagonal.
Eigen::MatrixXd sample_haar_orthogonal(int n, CounterRng& rng);

struct DosPair {
  DosHistogram re, im;
  long failed_trials = 0;
};

// Q^T Lambda Q + sigma V per trial, fresh Haar Q and fresh V.
DosPair free_approximation_dos(const Spectrum& spec, double sigma, int trials, CounterRng& rng,
                               int bins = 128);

// E^{pi(i)} + sigma v_i directly; no eigensolve.
DosPair classical_approximation_dos(const Spectrum& spec, double sigma, int trials,
                                    CounterRng& rng, int bins = 128);

// Full experiment: exact / free / classical pools with matched per-trial V
// substreams, shared bin edges, and Kolmogorov distances to exact.
struct DosComparison {
  DosPair exact, free_, classical;
  double dist_free_re = 0.0, dist_classical_re = 0.0;
  double dist_free_im = 0.0, dist_classical_im = 0.0;
};
DosComparison compare_dos(const SymbolParams& params, int n, double sigma, int trials,
                          std::uint64_t seed, int bins = 128);

}  // namespace fh
