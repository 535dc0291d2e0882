#pragma once

#include <complex>
#include <vector>

namespace fh {

using Complex = std::complex<double>;

// Exponent pair of the Fisher-Hartwig symbol a(z) = (2 - z - 1/z)^alpha (-z)^beta.
struct SymbolParams {
  double alpha;
  double beta;

  bool valid() const;
  void validate() const;  // throws ValidationError
};

// Complex momentum p with a(e^{-ip}) = E; Re p normalized to [0, 2pi).
struct Momentum {
  Complex p;
};

// a(e^{-ip}) with principal branches; for real p this is
// (2 - 2 cos p)^alpha e^{i pi beta} e^{-i p beta}.
Complex eval_symbol(const SymbolParams& params, Complex p);

// da/dp = (alpha cot(p/2) - i beta) a(e^{-ip}); singular at p = 0 (mod 2pi)
// where the symbol itself has its zero/pole.
Complex symbol_derivative(const SymbolParams& params, Complex p);

// t_r = (-1)^r Gamma(2a+1) / [Gamma(a+b+1-r) Gamma(a-b+1+r)], Gamma poles -> 0.
double fourier_coefficient(const SymbolParams& params, long r);

// Winding of the symbol image about `point`, traversed counterclockwise in
// z = e^{i theta} (the orientation for which -1 < beta < 0 gives -1).
int winding_number(const SymbolParams& params, Complex point, int grid = 1024);

// Winding of a closed polyline about `center` in the order given.
int polyline_winding(const std::vector<Complex>& points, Complex center);

// Damped Newton solve of a(e^{-ip}) = E from `guess`.
Momentum invert_symbol(const SymbolParams& params, Complex E, Complex guess);

// Eq.-(6) momentum 2 pi l / n + i (2 alpha + 1) ln n / n (O(1/n) term dropped).
Momentum asymptotic_momentum(int n, int ell, const SymbolParams& params);

// Eq.-(13) eigenvalue (-1)^beta 4^alpha sin^{2 alpha}(pi l / n) e^{-2 i pi beta l / n}.
Complex asymptotic_eigenvalue(const SymbolParams& params, int n, int ell);

// Eq.-(14) normalized right eigenvector.
std::vector<Complex> asymptotic_right_eigenvector(const SymbolParams& params, int n, int ell);

// Left eigenvector c^l * reverse(psi^l) with c^l fixed by sum_j lpsi_j psi_j = 1.
std::vector<Complex> asymptotic_left_eigenvector(const SymbolParams& params, int n, int ell);

}  // namespace fh
