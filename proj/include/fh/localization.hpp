#pragma once

#include <Eigen/Dense>

namespace fh {

enum class DecayClass { ExponentialBoundary, AlgebraicInterior, SuperExponentialBoundary, Unclassified };

const char* to_string(DecayClass c);

struct LocalizationProfile {
  double entropy = 0.0;  // bits
  double ipr = 0.0;
  int argmax_index = 0;
  DecayClass decay_class = DecayClass::Unclassified;
  double exp_rate = 0.0;   // per-step decay rate of the exponential fit
  double alg_power = 0.0;  // exponent of the algebraic fit
  double exp_r2 = 0.0;
  double alg_r2 = 0.0;
  bool underflow_trimmed = false;
};

// H = -sum |psi_j|^2 log2 |psi_j|^2; vector must be unit 2-norm.
double shannon_entropy(const Eigen::VectorXcd& vec);

// sum |psi_j|^4, in [1/n, 1].
double ipr(const Eigen::VectorXcd& vec);

LocalizationProfile decay_profile(const Eigen::VectorXcd& vec);

}  // namespace fh
