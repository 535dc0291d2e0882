#pragma once

#include <Eigen/Dense>

#include "fh/rng.hpp"
#include "fh/spectral.hpp"

namespace fh {

struct DiagonalPerturbation {
  Eigen::VectorXcd v;
  double variance = 1.0;  // E(v^2) of the sampling law (0 for complex normals)

  bool is_real() const { return v.imag().isZero(0.0); }
  double norm2() const { return v.cwiseAbs().maxCoeff(); }  // 2-norm of diag(v)

  static DiagonalPerturbation standard_normal(int n, CounterRng& rng);
  static DiagonalPerturbation standard_complex_normal(int n, CounterRng& rng);
  static DiagonalPerturbation constant(int n, Complex value);
  static DiagonalPerturbation indicator(int n, int site);  // e_site e_site^T
};

// E1^l = <lpsi^l| V |psi^l>
Eigen::VectorXcd first_order(const Spectrum& spec, const DiagonalPerturbation& V);

// E2^l = sum_{j != l} B_lj B_jl / (E_l - E_j), B = L diag(v) R
Eigen::VectorXcd second_order(const Spectrum& spec, const DiagonalPerturbation& V);

// E(E2^l) = (E(v^2)/n) sum_{j != l} 1/(E_l - E_j)
Eigen::VectorXcd expected_second_order(const Spectrum& spec, double variance);

struct AttractionTerms {
  Complex closed_form;  // -i variance / (2 n Im E_l)
  Complex exact;        // variance sum_m |psi_m|^2 |lpsi_m|^2 / (E_l - conj(E_l))
};
AttractionTerms conjugate_attraction(const Spectrum& spec, int ell, double variance);

struct FirstOrderEigvec {
  Eigen::MatrixXcd right;  // columns of |psi_0> + sigma |psi_1>
  Eigen::MatrixXcd left;   // rows of <lpsi_0| + sigma <lpsi_1|
  Eigen::VectorXd predicted_kappa;
  bool gap_warning = false;  // sigma ||V|| not small against the spectral gaps
};
FirstOrderEigvec first_order_eigvec(const Spectrum& spec, const DiagonalPerturbation& V,
                                    double sigma);

struct PerturbationReport {
  double sigma = 0.0;
  Eigen::VectorXcd E0, E1, E2, predicted, expectedE2;
  Eigen::VectorXd predicted_kappa;
};
PerturbationReport make_report(const Spectrum& spec, const DiagonalPerturbation& V, double sigma);

}  // namespace fh
