#pragma once

#include <Eigen/Dense>
#include <string>

#include "fh/symbol.hpp"

namespace fh {

// Dense Toeplitz matrix with entries t_{j-k} from the symbol's Fourier
// coefficients; immutable after construction.
struct ToeplitzMatrix {
  int n = 0;
  Eigen::MatrixXd entries;
  SymbolParams params{0.0, 0.0};
};

inline constexpr int kMaxToeplitzDim = 4096;

ToeplitzMatrix build_toeplitz(const SymbolParams& params, int n);

// Eq. (16): Tr T = n Gamma(2a+1) / [Gamma(a+b+1) Gamma(a-b+1)].
double closed_form_trace(const SymbolParams& params, int n);

// Eq. (17) via Barnes G, accumulated in log space.
double closed_form_determinant(const SymbolParams& params, int n);

// CSV (row-major, 17 significant digits) and a JSON sidecar {n, alpha, beta}.
void export_matrix_csv(const ToeplitzMatrix& T, const std::string& csv_path,
                       const std::string& sidecar_path);

}  // namespace fh
