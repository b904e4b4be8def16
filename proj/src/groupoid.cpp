#include "monodromy/groupoid.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace monodromy {

GroupoidMaps groupoid_maps(const LieContext& ctx, const GValuedMap& g,
                           double compose_tol) {
  (void)ctx;
  GroupoidMaps m;
  m.source = [](const GroupoidPoint& p) { return p.x; };
  m.target = [](const GroupoidPoint& p) {
    return Mat(p.h * p.x * p.h.partialPivLu().inverse());
  };
  m.unit = [g](const Mat& x) { return GroupoidPoint{g.eval(x), x}; };
  m.mult = [compose_tol](const GroupoidPoint& p1, const GroupoidPoint& p2) {
    Mat beta2 = p2.h * p2.x * p2.h.partialPivLu().inverse();
    if ((p1.x - beta2).cwiseAbs().maxCoeff() >
        compose_tol * std::max(1.0, beta2.cwiseAbs().maxCoeff()))
      throw NotComposable("groupoid mult: source/target mismatch");
    return GroupoidPoint{p1.h * p2.h, p2.x};
  };
  return m;
}

double mixed_bracket_residual(const LieContext& ctx, const Mat& h, const Mat& x) {
  const int d = ctx.dim();
  Mat P = pi_am_tensor(ctx, h, x);
  Mat hinv = h.partialPivLu().inverse();
  Mat hxh = h * x * hinv;

  // Gradients of the pulled-back coordinate functions. a*f for f the entry
  // x(u,v) has the unit gradient at x-block coordinate idx(u,v); b*g for the
  // entry (h x h^{-1})(u,v) has closed-form h- and x-gradients.
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    Vec gf = Vec::Zero(2 * d);
    gf(d + a) = 1.0;
    auto [u, v] = ctx.unidx(a);
    (void)u;
    (void)v;
    for (int b = 0; b < d; ++b) {
      Vec gg = Vec::Zero(2 * d);
      auto [p, q] = ctx.unidx(b);
      for (int c = 0; c < d; ++c) {
        Mat E = ctx.basis(c);
        gg(c) = (E * x * hinv - hxh * E * hinv)(p, q);      // d/dh(c)
        gg(d + c) = (h * E * hinv)(p, q);                   // d/dx(c)
      }
      worst = std::max(worst, std::abs((gf.transpose() * P * gg)(0, 0)));
    }
  }
  return worst;
}

std::pair<Mat, GStarTriple> map_v(const LieContext& ctx, const GValuedMap& g,
                                  const Mat& h, const Mat& x) {
  Mat gx = g.eval(x);
  Mat M = gx * x.exp() * gx.partialPivLu().inverse();
  return {Mat(gx * h), conjugate_factorize(ctx, M)};
}

double map_v_identity_residual(const LieContext& ctx, const GValuedMap& g,
                               const Mat& x) {
  Mat gx = g.eval(x);
  Mat M = gx * x.exp() * gx.partialPivLu().inverse();
  GStarTriple t = conjugate_factorize(ctx, M);
  Mat back = t.b_minus * t.b_plus.partialPivLu().inverse();
  return (M - back).cwiseAbs().maxCoeff();
}

SigmaPrimePoint F_prime_g(const GValuedMap& g, const SigmaPoint& p, double margin) {
  check_torus_margin(p.lambda, margin);
  Mat xx = p.h * p.lambda * p.h.partialPivLu().inverse();
  SigmaPrimePoint q;
  q.h = g.eval(xx) * p.h;
  q.lambda = p.lambda;
  return q;
}

}  // namespace monodromy
