#include "monodromy/reductions.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace monodromy {

namespace {

Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

}  // namespace

SigmaPoint reduction_orbit_iota(const LieContext& ctx, const Mat& g1,
                                const Mat& x1, const Mat& g2, double margin,
                                double diag_tol) {
  (void)ctx;
  Mat g1inv = g1.partialPivLu().inverse();
  Mat lam = g1 * x1 * g1inv;
  double off = (lam - delta_projection(lam)).cwiseAbs().maxCoeff();
  if (off > diag_tol * std::max(1.0, lam.cwiseAbs().maxCoeff()))
    throw ConstraintViolation("reduction_orbit_iota: Ad_{g1} x1 is not diagonal");
  lam = delta_projection(lam);
  check_torus_margin(lam, margin);
  SigmaPoint p;
  p.h = g2 * g1inv;
  p.lambda = -lam;
  return p;
}

OrbitPullbackValues reduction_orbit_pullback(const LieContext& ctx, const Mat& A0,
                                      const Mat& g1, const Mat& x1,
                                      const Mat& g2, const Mat& X1,
                                      const Mat& R1, const Mat& X2,
                                      const Mat& R2) {
  const int n = ctx.n(), d = ctx.dim();
  Mat g1inv = g1.partialPivLu().inverse();
  Mat g2inv = g2.partialPivLu().inverse();
  Mat x2 = -x1;
  Mat A2 = g2inv * A0 * g2;

  // First factor (order-one pole): tangent (0, Ad_{g1^{-1}} R_i) has jet
  // parameters X = 0, R = R_i.
  OrbitTangent o1a{{Mat::Zero(n, n)}, R1}, o1b{{Mat::Zero(n, n)}, R2};
  cplx w1 = omega_extended_orbit(ctx, g1, {x1}, o1a, o1b);

  // Second factor (order-two pole): the jet parameters (X0, X1jet, R) of the
  // raw tangent (Ad_{g2^{-1}} X_i, -Ad_{g1^{-1}} R_i) solve
  //   [A2, X1jet] + g2^{-1} R g2 = dx2 - [x2, X0].
  auto solve_jet = [&](const Mat& Xi, const Mat& Ri) {
    Mat X0 = g2inv * Xi * g2;
    Mat rhs = -(g1inv * Ri * g1) - commutator(x2, X0);
    Mat Asys(d, d + n);
    for (int a = 0; a < d; ++a)
      Asys.col(a) = ctx.flatten(commutator(A2, ctx.basis(a)));
    for (int j = 0; j < n; ++j)
      Asys.col(d + j) = ctx.flatten(g2inv * ctx.basis(ctx.idx(j, j)) * g2);
    Vec sol = Asys.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                  .solve(ctx.flatten(rhs));
    double resid = (Asys * sol - ctx.flatten(rhs)).cwiseAbs().maxCoeff();
    if (resid > 1e-9 * std::max(1.0, rhs.cwiseAbs().maxCoeff()))
      throw ConstraintViolation(
          "reduction_orbit_pullback: tangent is not tangent to the orbit");
    Mat X1jet = ctx.unflatten(sol.head(d));
    Mat R = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) R(j, j) = sol(d + j);
    return OrbitTangent{{X0, X1jet}, R};
  };
  OrbitTangent o2a = solve_jet(X1, R1), o2b = solve_jet(X2, R2);
  cplx w2 = omega_extended_orbit(ctx, g2, {x2, A2}, o2a, o2b);

  // Reduced point and pushed tangents.
  SigmaPoint q = reduction_orbit_iota(ctx, g1, x1, g2);
  Mat W1 = g1 * g2inv * X1 * g2 * g1inv;
  Mat W2 = g1 * g2inv * X2 * g2 * g1inv;
  OrbitPullbackValues out;
  out.upstairs = w1 + w2;
  out.downstairs = omega_sigma(ctx, q.lambda, W1, Mat(-R1), W2, Mat(-R2));
  out.display = LieContext::pairing(R2, W1) - LieContext::pairing(R1, W2) +
                LieContext::pairing(x1, Mat(g2inv * commutator(X1, X2) * g2));
  return out;
}

ReducedMonodromyPoint reduction_monodromy(const LieContext& ctx, const Mat& h,
                                          const Mat& lambda, const Mat& C,
                                          const GStarTriple& triple,
                                          double tol) {
  (void)ctx;
  Mat hinv = h.partialPivLu().inverse();
  Mat Cinv = C.partialPivLu().inverse();
  Mat M = C * Mat(kTwoPiI * hinv * lambda * h).exp() * Cinv;
  Mat N = triple.b_minus.partialPivLu().solve(triple.b_plus);
  double defect = (M - N).cwiseAbs().maxCoeff();
  if (defect > tol * std::max(1.0, N.cwiseAbs().maxCoeff()))
    throw ConstraintViolation("reduction_monodromy: unit moment constraint fails");
  ReducedMonodromyPoint out;
  out.g1 = C * hinv;
  out.lambda = lambda;
  Mat epil = Mat::Zero(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i) epil(i, i) = std::exp(kPi * kI * lambda(i, i));
  out.u = triple.b_plus.partialPivLu().solve(out.g1 * epil);
  out.triple = triple;
  return out;
}

FormAgreementValues reduction_monodromy_form_agreement(
    const LieContext& ctx, const Mat& h, const Mat& lambda, const Mat& C,
    const Mat& dh1, const Mat& dlam1, const Mat& dC1, const Mat& dh2,
    const Mat& dlam2, const Mat& dC2, cplx scale, double fd_step) {
  const int d = ctx.dim(), n = ctx.n();

  auto triple_at = [&](const Mat& hh, const Mat& ll, const Mat& CC) {
    Mat M = CC * Mat(kTwoPiI * hh.partialPivLu().solve(ll) * hh).exp() *
            CC.partialPivLu().inverse();
    return dual_factorize(ctx, M);
  };
  GStarTriple t0 = triple_at(h, lambda, C);

  // Tangent of the derived factors along (dh, dlam, dC) by central differences.
  auto triple_tangent = [&](const Mat& dh, const Mat& dl, const Mat& dC) {
    auto central = [&](double s) {
      GStarTriple tp = triple_at(Mat(h + s * dh), Mat(lambda + s * dl), Mat(C + s * dC));
      GStarTriple tm = triple_at(Mat(h - s * dh), Mat(lambda - s * dl), Mat(C - s * dC));
      CtildeTangent v;
      v.dC = dC;
      v.dd = {Mat((tp.b_minus - tm.b_minus) / (2.0 * s))};
      v.de = {Mat((tp.b_plus - tm.b_plus) / (2.0 * s))};
      v.dlambda = (tp.Lambda - tm.Lambda) / (2.0 * s);
      return v;
    };
    CtildeTangent a = central(fd_step), b = central(fd_step / 2.0);
    CtildeTangent v;
    v.dC = dC;
    v.dd = {Mat((4.0 * b.dd[0] - a.dd[0]) / 3.0)};
    v.de = {Mat((4.0 * b.de[0] - a.de[0]) / 3.0)};
    v.dlambda = (4.0 * b.dlambda - a.dlambda) / 3.0;
    return v;
  };

  CtildePoint p1 = ctilde_k1(h, lambda, /*flip=*/true);
  CtildeTangent v1a = ctilde_k1_tangent(lambda, dh1, dlam1, true);
  CtildeTangent v1b = ctilde_k1_tangent(lambda, dh2, dlam2, true);
  CtildePoint p2{C, {t0.b_minus}, {t0.b_plus}, t0.Lambda};
  CtildeTangent v2a = triple_tangent(dh1, dlam1, dC1);
  CtildeTangent v2b = triple_tangent(dh2, dlam2, dC2);
  FormAgreementValues out;
  out.upstairs = fusion_form(ctx, p1, v1a, v1b, p2, v2a, v2b);

  // Image chart point (C h^{-1}, 2 pi i lambda) and pushed tangents.  The
  // 2 pi i factor in the torus coordinate makes the fused two-form and the
  // bivector-chart form agree with scale exactly 1.
  Mat hinv = h.partialPivLu().inverse();
  Mat g1 = C * hinv;
  Mat lamp = kTwoPiI * lambda;
  auto pushed = [&](const Mat& dh, const Mat& dl, const Mat& dC) {
    Mat dg1 = dC * hinv - g1 * dh * hinv;
    Vec w(d + n);
    w.head(d) = ctx.flatten(dg1);
    for (int j = 0; j < n; ++j) w(d + j) = kTwoPiI * dl(j, j);
    return w;
  };
  Mat Pr = pi_r_tensor(ctx, g1, lamp);
  Mat Om = Pr.partialPivLu().inverse();
  Om = 0.5 * (Om - Om.transpose());
  Vec w1 = pushed(dh1, dlam1, dC1), w2 = pushed(dh2, dlam2, dC2);
  out.downstairs = scale * (w1.transpose() * Om * w2)(0, 0);
  return out;
}

}  // namespace monodromy
