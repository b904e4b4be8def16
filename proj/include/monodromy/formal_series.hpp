#pragma once

#include <vector>

#include "monodromy/lie_context.hpp"

namespace monodromy {

//------------------------------------------------------------------------------
// The meromorphic connection d - (A0/z^2 + x/z) dz on the trivial rank-n
// bundle, with A0 diagonal and regular. The frame substitutions used below:
//   F = H * exp(-A0/z) * z^{delta(x)}  near 0:    z^2 H' = [A0,H] + z(xH - H delta(x))
//   F = H * z^x                        near inf:  z^2 H' = A0 H + z[x,H]
//------------------------------------------------------------------------------
struct IrregularConnection {
  const LieContext* ctx = nullptr;
  Mat A0;
  Mat x;

  IrregularConnection() = default;
  // Validates that A0 is diagonal with entries separated by reg_margin.
  IrregularConnection(const LieContext& c, const Mat& A0_in, const Mat& x_in,
                      double reg_margin = 1e-6);
};

// Truncated power series sum_k coeffs[k] z^k (or sum_k coeffs[k] z^-k for the
// series at infinity); coeffs[0] = I.
struct FormalSeries {
  std::vector<Mat> coeffs;
  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  // sum_{k<=K} coeffs[k] w^k for w = z (pole series) or w = 1/z (infinity).
  Mat eval(cplx w, int K) const;
};

// Coefficients H_1..H_N of the formal gauge at the irregular pole:
//   [A0, H_k] = (k-1) H_{k-1} - x H_{k-1} + H_{k-1} delta(x),
// off-diagonal parts solved directly, diagonal parts fixed by solvability of
// the next order. The series is divergent; use optimal truncation.
FormalSeries formal_H_series(const IrregularConnection& conn, int N);

// Defect of coefficient k in the recursion above (oracle for tests).
double h_series_recursion_residual(const IrregularConnection& conn,
                                   const FormalSeries& s, int k);

// Coefficients G_1..G_K of the convergent Frobenius series at infinity:
//   (k Id + ad_x) G_k = -A0 G_{k-1}.
// Throws Resonant when the smallest singular value of (k Id + ad_x) falls
// below margin for some k <= K.
FormalSeries frobenius_Hinf(const IrregularConnection& conn, int K,
                            double margin = 1e-6);

double hinf_recursion_residual(const IrregularConnection& conn,
                               const FormalSeries& s, int k);

}  // namespace monodromy
