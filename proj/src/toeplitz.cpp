#include "fh/toeplitz.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "fh/errors.hpp"
#include "fh/special_functions.hpp"

namespace fh {

ToeplitzMatrix build_toeplitz(const SymbolParams& params, int n) {
  params.validate();
  if (n < 2) throw ValidationError("build_toeplitz: n must be >= 2");
  if (n > kMaxToeplitzDim) throw CapacityError("build_toeplitz: n exceeds configured cap");
  std::vector<double> t(2 * n - 1);
  for (int r = -(n - 1); r <= n - 1; ++r) t[r + n - 1] = fourier_coefficient(params, r);
  ToeplitzMatrix T;
  T.n = n;
  T.params = params;
  T.entries.resize(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) T.entries(j, k) = t[(j - k) + n - 1];
  return T;
}

double closed_form_trace(const SymbolParams& params, int n) {
  params.validate();
  if (n == 0) return 0.0;
  return n * fourier_coefficient(params, 0);
}

double closed_form_determinant(const SymbolParams& params, int n) {
  params.validate();
  const double a = params.alpha, b = params.beta;
  if (!(1.0 + a + b > 0.0) || !(1.0 + a - b > 0.0))
    throw DomainError("closed_form_determinant: needs 1 + alpha +- beta > 0");
  if (n < 1) throw ValidationError("closed_form_determinant: n must be >= 1");
  const double log_det = log_barnes_g(1.0 + a + b) + log_barnes_g(1.0 + a - b) -
                         log_barnes_g(1.0 + 2.0 * a) + log_barnes_g(1.0 + n) +
                         log_barnes_g(1.0 + n + 2.0 * a) - log_barnes_g(1.0 + n + a + b) -
                         log_barnes_g(1.0 + n + a - b);
  return std::exp(log_det);
}

void export_matrix_csv(const ToeplitzMatrix& T, const std::string& csv_path,
                       const std::string& sidecar_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw Error("export_matrix_csv: cannot open " + csv_path);
  char buf[40];
  for (int j = 0; j < T.n; ++j) {
    for (int k = 0; k < T.n; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", T.entries(j, k));
      csv << buf << (k + 1 < T.n ? "," : "\n");
    }
  }
  std::ofstream side(sidecar_path);
  if (!side) throw Error("export_matrix_csv: cannot open " + sidecar_path);
  char line[160];
  std::snprintf(line, sizeof line, "{\"n\": %d, \"alpha\": %.17g, \"beta\": %.17g}\n", T.n,
                T.params.alpha, T.params.beta);
  side << line;
}

}  // namespace fh
