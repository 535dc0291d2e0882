#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "fh/errors.hpp"
#include "fh/rng.hpp"
#include "fh/spectral.hpp"
#include "fh/toeplitz.hpp"
#include "oracles.hpp"

using namespace fh;

namespace {
const SymbolParams kWork{1.0 / 3.0, -0.5};
constexpr double kTwoPi = 6.28318530717958647692;

Spectrum work_spectrum(int n) {
  ToeplitzMatrix T = build_toeplitz(kWork, n);
  Spectrum s = eig_full(T.entries);
  order_by_momentum(s, kWork);
  return s;
}
}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS(eig_full(Eigen::MatrixXd::Identity(5, 5)), DegeneracyError);
  // nilpotent single-mode matrix: all eigenvalues zero
  ToeplitzMatrix N = build_toeplitz({0.0, 1.0}, 4);
  CHECK_THROWS_AS(eig_full(N.entries), DegeneracyError);
}

TEST_CASE("2x2 off-diagonal block") {
  const double t1 = fourier_coefficient(kWork, 1);
  const double tm1 = fourier_coefficient(kWork, -1);
  Eigen::MatrixXd M(2, 2);
  M << 0.0, tm1, t1, 0.0;
  Spectrum s = eig_full(M);
  // t1 t-1 < 0 here, so a conjugate imaginary pair +-i sqrt(|t1 t-1|)
  const double expected = std::sqrt(-t1 * tm1);
  std::vector<double> ims{s.values(0).imag(), s.values(1).imag()};
  std::sort(ims.begin(), ims.end());
  CHECK(ims[0] == doctest::Approx(-expected).epsilon(1e-12));
  CHECK(ims[1] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(s.values(0).real()) < 1e-14);
}

TEST_CASE("working matrix satisfies the eigensolver contract") {
  const int n = 160;
  ToeplitzMatrix T = build_toeplitz(kWork, n);
  Spectrum s = eig_full(T.entries);

  // residuals
  const double tnorm = T.entries.norm();
  for (int l = 0; l < n; l += 13) {
    const double r_right =
        (T.entries.cast<Complex>() * s.right.col(l) - s.values(l) * s.right.col(l)).norm();
    CHECK(r_right <= 1e-9 * tnorm);
    const double r_left = (s.left.row(l) * T.entries.cast<Complex>() -
                           s.values(l) * s.left.row(l))
                              .norm();
    CHECK(r_left <= 1e-9 * tnorm * s.left.row(l).norm());
  }

  // unit right vectors
  for (int l = 0; l < n; ++l) CHECK(std::abs(s.right.col(l).norm() - 1.0) < 1e-12);

  // biorthogonality residual, scaled by the worst condition number
  const double kappa_max = s.kappa.maxCoeff();
  Eigen::MatrixXcd G = s.left * s.right;
  G.diagonal().array() -= 1.0;
  CHECK(G.cwiseAbs().maxCoeff() <= 1e-8 * kappa_max);

  // trace and determinant against the closed forms
  const Complex sum = s.values.sum();
  CHECK(std::abs(sum.imag()) < 1e-8);
  CHECK(sum.real() ==
        doctest::Approx(closed_form_trace(kWork, n)).epsilon(1e-8));
  Complex log_prod{0.0, 0.0};
  for (int l = 0; l < n; ++l) log_prod += std::log(s.values(l));
  CHECK(std::abs(log_prod.imag()) < 1e-6);  // phases cancel over conjugate pairs
  CHECK(std::exp(log_prod.real()) ==
        doctest::Approx(closed_form_determinant(kWork, n)).epsilon(1e-5));

  // conjugation-closed eigenvalue multiset
  for (int l = 0; l < n; ++l) {
    double best = 1e300;
    for (int j = 0; j < n; ++j) best = std::min(best, std::abs(s.values(j) - std::conj(s.values(l))));
    CHECK(best < 1e-9);
  }

  // left vectors are the reversal of the right ones, scaled by c
  for (int l = 0; l < n; ++l) {
    double err = 0.0;
    for (int j = 0; j < n; ++j)
      err = std::max(err, std::abs(s.left(l, j) - s.c(l) * s.right(n - 1 - j, l)));
    CHECK(err <= 1e-6 * s.left.row(l).norm());
  }

  // condition numbers: kappa = ||left row|| under this normalization
  Eigen::VectorXd k2 = condition_numbers(s);
  for (int l = 0; l < n; ++l) {
    CHECK(s.kappa(l) >= 1.0);
    CHECK(k2(l) == doctest::Approx(s.kappa(l)).epsilon(1e-12));
    CHECK(s.kappa(l) == doctest::Approx(s.left.row(l).norm()).epsilon(1e-8));
  }
}

TEST_CASE("normal matrices have unit condition numbers") {
  ToeplitzMatrix T = build_toeplitz({1.0 / 3.0, 0.0}, 32);  // symmetric
  Spectrum s = eig_full(T.entries);
  for (int l = 0; l < 32; ++l) CHECK(s.kappa(l) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("momentum ordering of the working spectrum") {
  const int n = 160;
  Spectrum s = work_spectrum(n);
  // ascending real parts with near-constant spacing away from the boundaries
  std::vector<double> dre;
  for (int l = 0; l < n - 1; ++l) {
    CHECK(s.momenta(l).real() <= s.momenta(l + 1).real());
    if (l >= 39 && l < 119) dre.push_back(s.momenta(l + 1).real() - s.momenta(l).real());
  }
  double mean = 0.0;
  for (double d : dre) mean += d;
  mean /= dre.size();
  CHECK(mean == doctest::Approx(kTwoPi / n).epsilon(0.05));

  // each momentum reproduces its eigenvalue
  for (int l = 0; l < n; l += 17)
    CHECK(std::abs(eval_symbol(kWork, s.momenta(l)) - s.values(l)) <=
          1e-10 * (1.0 + std::abs(s.values(l))));

  // conjugate eigenvalue pairs map to p and 2pi - p
  for (int l = 20; l < 140; l += 11) {
    int partner = -1;
    double best = 1e300;
    for (int j = 0; j < n; ++j) {
      const double d = std::abs(s.values(j) - std::conj(s.values(l)));
      if (d < best) {
        best = d;
        partner = j;
      }
    }
    CHECK(std::abs(s.momenta(partner).real() - (kTwoPi - s.momenta(l).real())) < 1e-6);
  }

  // labels 78..81 sit by the right real-axis crossing with kappa ~ 3e3
  for (int label : {78, 79, 80, 81}) {
    CHECK(s.values(label - 1).real() > 1.5);
    CHECK(s.kappa(label - 1) > 1.0e3);
    CHECK(s.kappa(label - 1) < 1.0e4);
  }
}

TEST_CASE("small-case ordering equals phase ordering on the circle image") {
  const SymbolParams params{0.0, -0.5};
  ToeplitzMatrix T = build_toeplitz(params, 8);
  Spectrum s = eig_full(T.entries);
  order_by_momentum(s, params);
  // |a| = 1 image arc: ordering by Re p must equal ordering by phase
  for (int l = 0; l + 1 < 8; ++l)
    CHECK(std::arg(s.values(l)) < std::arg(s.values(l + 1)));
}

TEST_CASE("asymptotic eigenvalue accuracy at the working size") {
  const int n = 160;
  Spectrum s = work_spectrum(n);
  std::vector<double> rel;
  for (int ell = 40; ell <= 120; ++ell) {
    const Complex approx = asymptotic_eigenvalue(kWork, n, ell);
    rel.push_back(std::abs(approx - s.values(ell - 1)) / std::abs(s.values(ell - 1)));
  }
  CHECK(oracle::median(rel) < 0.1);
}

TEST_CASE("spectrum hugs the symbol image from inside") {
  // max_l min_p |E - a(e^{-ip})| <= C ln n / n with C calibrated at 160
  const double C = 2.5;
  for (int n : {160, 320}) {
    ToeplitzMatrix T = build_toeplitz(kWork, n);
    Spectrum s = eig_full(T.entries);
    std::vector<Complex> curve(20000);
    for (std::size_t k = 0; k < curve.size(); ++k)
      curve[k] = eval_symbol(kWork, 1e-4 + (kTwoPi - 2e-4) * k / (curve.size() - 1));
    double worst = 0.0;
    for (int l = 0; l < n; ++l) {
      double best = 1e300;
      for (const Complex& w : curve) best = std::min(best, std::abs(s.values(l) - w));
      worst = std::max(worst, best);
    }
    CHECK(worst <= C * std::log(double(n)) / n);
  }
}

TEST_CASE("trajectory tracking basics") {
  const int n = 160;
  ToeplitzMatrix T = build_toeplitz(kWork, n);
  Spectrum s0 = eig_full(T.entries);
  order_by_momentum(s0, kWork);

  SUBCASE("single level is the identity") {
    TrajectorySet ts = track_trajectories({0.0}, {s0});
    for (int l = 0; l < n; ++l) {
      CHECK(ts.values(0, l) == s0.values(l));
      CHECK(ts.cols[0][l] == l);
    }
  }

  SUBCASE("matched paths stay continuous across a short grid") {
    CounterRng rng(7, "test");
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.next_normal();
    std::vector<double> grid{0.0, 0.05, 0.10, 0.15};
    std::vector<Spectrum> spectra{s0};
    for (std::size_t k = 1; k < grid.size(); ++k) {
      Eigen::MatrixXd M = T.entries + grid[k] * Eigen::MatrixXd(v.asDiagonal());
      spectra.push_back(eig_full(M));
    }
    TrajectorySet ts = track_trajectories(grid, spectra);
    for (int l = 0; l < n; ++l)
      for (std::size_t k = 1; k < grid.size(); ++k)
        CHECK(std::abs(ts.values(k, l) - ts.values(k - 1, l)) < 0.25);
    // bijective at every level
    for (std::size_t k = 0; k < grid.size(); ++k) {
      std::vector<bool> seen(n, false);
      for (int l = 0; l < n; ++l) {
        CHECK(!seen[ts.cols[k][l]]);
        seen[ts.cols[k][l]] = true;
      }
    }
  }
}

TEST_CASE("ambiguous matching raises grid-too-coarse") {
  // sources on +-1 with 45-degree vectors; targets +-0.01 along the axes:
  // distances within 10%, overlaps exactly equal, sources real -> error
  Eigen::MatrixXd A(2, 2), B(2, 2);
  A << 0.0, 1.0, 1.0, 0.0;
  B << 0.01, 0.0, 0.0, -0.01;
  std::vector<Spectrum> spectra{eig_full(A), eig_full(B)};
  CHECK_THROWS_AS(track_trajectories({0.0, 1.0}, spectra), GridTooCoarseError);
}

}  // TEST_SUITE
