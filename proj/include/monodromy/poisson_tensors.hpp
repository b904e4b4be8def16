#pragma once

#include <functional>
#include <string>

#include "monodromy/tensors.hpp"

namespace monodromy {

//------------------------------------------------------------------------------
// Chart conventions. All bivectors are assembled in flat chart coordinates:
//   * a G factor contributes the n^2 matrix-entry coordinates h(i,j) (flat
//     index idx(i,j)),
//   * the dual space g* contributes the n^2 entry coordinates x(i,j); the
//     coordinate paired with e_a under the trace form is the entry dual(a),
//   * a Cartan torus factor contributes the n diagonal entries.
// Every evaluated tensor is exactly antisymmetric (enforced at assembly after
// an internal symmetry check).
//------------------------------------------------------------------------------
struct TensorField {
  std::string name;
  const LieContext* ctx = nullptr;
  int dim = 0;
  std::function<Mat(const Vec&)> eval;
};

// Chart packing helpers.
Vec pack_gstar(const LieContext& ctx, const Mat& x);
Mat unpack_gstar(const LieContext& ctx, const Vec& p);
Vec pack_pair(const LieContext& ctx, const Mat& h, const Mat& x);  // G x g*
void unpack_pair(const LieContext& ctx, const Vec& p, Mat& h, Mat& x);
Vec pack_torus_pair(const LieContext& ctx, const Mat& h, const Mat& lambda);  // G x t'
void unpack_torus_pair(const LieContext& ctx, const Vec& p, Mat& h, Mat& lambda);

// Guard for the regular-torus condition: all root values lambda_i - lambda_j
// (i != j) keep distance >= margin from the integers (0 included).
void check_torus_margin(const Mat& lambda, double margin = 1e-6);

// Linear Kirillov-Kostant-Souriau bivector on g*: {f,g}(x) = <x,[df,dg]>.
Mat kks_tensor(const LieContext& ctx, const Mat& x);

// Semenov-Tian-Shansky bivector on g*:
//   (ad_x (x) (1/2) ad_x coth((1/2) ad_x))(t) - (ad_x (x) ad_x)(r0)
// with r0 the skew part of the standard r-matrix of ctx's positive system.
Mat sts_tensor(const LieContext& ctx, const Mat& x);

// Bivector on G x g*: pi_kks(x) + l_h(theta) + l_h(r_am(x)) - r_h(r0), where
// theta = sum_a d/dx^a ^ e_a couples the two factors.
Mat pi_am_tensor(const LieContext& ctx, const Mat& h, const Mat& x);

// Bivector on G x t': l_h(t_j) ^ d/dt^j + l_h((id (x) ad^{-1}_lambda)(t)).
Mat pi_sigma_tensor(const LieContext& ctx, const Mat& h, const Mat& lambda,
                    double margin = 1e-6);

// pi_sigma + l_h(r_am(lambda)) - r_h(r0) on G x t'.
Mat pi_r_tensor(const LieContext& ctx, const Mat& h, const Mat& lambda,
                double margin = 1e-6);

// Matrix of the 2-form <R1,X2> - <R2,X1> - <lambda,[X1,X2]> on G x t' in the
// same chart coordinates (X = h^{-1} dh the left-trivialized group tangent).
Mat omega_sigma_matrix(const LieContext& ctx, const Mat& h, const Mat& lambda);

// Field wrappers over the packed charts.
TensorField kks_field(const LieContext& ctx);
TensorField sts_field(const LieContext& ctx);
TensorField pi_am_field(const LieContext& ctx);
TensorField pi_sigma_field(const LieContext& ctx);
TensorField pi_r_field(const LieContext& ctx);

}  // namespace monodromy
