#pragma once

#include "monodromy/monodromy.hpp"

namespace monodromy {

// Gauss factorization M = b_minus^{-1} b_plus with triangularity taken with
// respect to ctx.ordering() and the balanced-diagonal normalization
// diag(b_minus) diag(b_plus) = 1, diag(b_plus) = e^{pi i Lambda}. Throws
// OutsideBigCell when a pivot falls below pivot_tol.
GStarTriple dual_factorize(const LieContext& ctx, const Mat& M,
                           double pivot_tol = 1e-10);

// Factorization in the conjugated form M = b_minus * b_plus^{-1} (used by the
// v-map identity g e^{x} g^{-1} = b_minus b_plus^{-1}), same normalization.
GStarTriple conjugate_factorize(const LieContext& ctx, const Mat& M,
                                double pivot_tol = 1e-10);

// I(x) = dual_factorize(e^{x}) and its inverse via the principal logarithm of
// b_minus^{-1} b_plus. Round trip is exact to ~1e-12 for small x.
GStarTriple map_I(const LieContext& ctx, const Mat& x);
Mat map_I_inverse(const LieContext& ctx, const GStarTriple& t);

}  // namespace monodromy
