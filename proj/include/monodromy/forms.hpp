#pragma once

#include <vector>

#include "monodromy/lie_context.hpp"

namespace monodromy {

// Tangent to an extended orbit in parametrized form: a jet X = X[0] + X[1] z
// + ... (k entries) and a diagonal R in the dual Cartan.
struct OrbitTangent {
  std::vector<Mat> X;
  Mat R;
};

// <R1,X2> - <R2,X1> - <lambda,[X1,X2]> on the slice G x t' (the bracket-term
// sign is the one that makes the form closed; see the comment in the source).
cplx omega_sigma(const LieContext& ctx, const Mat& lambda, const Mat& X1,
                 const Mat& R1, const Mat& X2, const Mat& R2);

// Extended-orbit 2-form at (g0, A), A = (A_1, ..., A_k) the coefficients of
// dz/z^j:   <R1, Ad_{g0} X2> - <R2, Ad_{g0} X1> + <A, [X1, X2]>
// with the residue pairing <A, Y> = sum_j (A_j, Y_{j-1}); k in {1, 2}.
cplx omega_extended_orbit(const LieContext& ctx, const Mat& g0,
                          const std::vector<Mat>& A, const OrbitTangent& v1,
                          const OrbitTangent& v2);

//------------------------------------------------------------------------------
// Monodromy-data quasi-Hamiltonian spaces. A point is (C, d, e, lambda) with
// k-1 lower factors d_j, k-1 upper factors e_j; the k = 1 space is the
// restriction of k = 2 to (h, e^{-pi i lambda}, e^{pi i lambda}, lambda).
//------------------------------------------------------------------------------
struct CtildePoint {
  Mat C;
  std::vector<Mat> d, e;
  Mat lambda;
};
struct CtildeTangent {
  Mat dC;
  std::vector<Mat> dd, de;
  Mat dlambda;
};

int ctilde_k(const CtildePoint& p);

// Restricted k=1 point/tangent embedded in the k=2 space. With flip=false the
// factors are (e^{-pi i lambda}, e^{pi i lambda}); flip=true uses the opposite
// pair (e^{pi i lambda}, e^{-pi i lambda}).
CtildePoint ctilde_k1(const Mat& h, const Mat& lambda, bool flip = false);
CtildeTangent ctilde_k1_tangent(const Mat& lambda, const Mat& dh,
                                const Mat& dlambda, bool flip = false);

// Group-valued moment C^{-1} d_1^{-1} ... d_{k-1}^{-1} e_{k-1} ... e_1 C and
// its derivative along a tangent.
Mat qh_moment(const CtildePoint& p);
Mat qh_moment_derivative(const CtildePoint& p, const CtildeTangent& v);

// The 2-form
//   (1/2)(D*thetabar, E*thetabar)
//   + (1/2) sum_j [(D_j*theta, D_{j-1}*theta) - (E_j*theta, E_{j-1}*theta)]
// with D_j = d_j...d_1 C, E_j = e_j...e_1 C, D_0 = E_0 = C, evaluated on two
// tangents; (a,b)(v,w) = <a(v),b(w)> - <a(w),b(v)>.
cplx qh_form_ctilde(const LieContext& ctx, const CtildePoint& p,
                    const CtildeTangent& v1, const CtildeTangent& v2);

// Same with the structural constraints checked first (triangularity of the
// factors for ctx's ordering and diag(d_j)^{-1} = diag(e_j) = e^{pi i lambda
// /(k-1)}), throwing ConstraintViolation beyond `tol`.
cplx qh_form_Ctilde(const LieContext& ctx, int k, const CtildePoint& p,
                    const CtildeTangent& v1, const CtildeTangent& v2,
                    double tol = 1e-8);

// Fusion: omega1 + omega2 - (1/2)(mu1*theta, mu2*thetabar) on the product, and
// the fused moment mu1 mu2.
cplx fusion_form(const LieContext& ctx, const CtildePoint& p1,
                 const CtildeTangent& v1a, const CtildeTangent& v1b,
                 const CtildePoint& p2, const CtildeTangent& v2a,
                 const CtildeTangent& v2b);
Mat fusion_moment(const CtildePoint& p1, const CtildePoint& p2);

}  // namespace monodromy
