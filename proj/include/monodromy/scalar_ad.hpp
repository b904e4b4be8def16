#pragma once

#include <functional>

#include "monodromy/lie_context.hpp"

namespace monodromy {

using ScalarFn = std::function<cplx(cplx)>;

// Linear operator on g represented by its (n^2 x n^2) matrix in the elementary
// basis, together with an applicator on matrices.
struct LinOp {
  const LieContext* ctx = nullptr;
  Mat op;  // dim x dim

  Mat apply(const Mat& Y) const { return ctx->unflatten(op * ctx->flatten(Y)); }
};

// Operator f(ad_X): eigenvectors V e_ij V^{-1} (X = V Lambda V^{-1}) with
// eigenvalues f(lambda_i - lambda_j). Uses the n x n eigendecomposition of X;
// falls back to the spectral decomposition of the (n^2 x n^2) operator ad_X
// when cond(V) exceeds `cond_threshold`. Throws NonDiagonalizable when both
// routes are ill-conditioned.
LinOp scalar_function_of_ad(const LieContext& ctx, const ScalarFn& f, const Mat& X,
                            double cond_threshold = 1e8);

// Inverse of ad_X on its image, zero on the centralizer (eigenvalue differences
// below `null_tol` are treated as kernel directions).
LinOp ad_inverse_restricted(const LieContext& ctx, const Mat& X, double null_tol = 1e-9);

}  // namespace monodromy
