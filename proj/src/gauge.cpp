#include "monodromy/gauge.hpp"

#include "monodromy/rmatrix.hpp"

namespace monodromy {

Mat map_derivative(const GValuedMap& g, const Mat& x, const Mat& dir, double h) {
  if (g.derivative) return g.derivative(x, dir);
  double step = h * std::max(1.0, x.norm());
  auto central = [&](double s) { return Mat(((g.eval(x + s * dir) - g.eval(x - s * dir)) / (2.0 * s))); };
  Mat d1 = central(step), d2 = central(step / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

TwoTensor gauge_lhs(const GValuedMap& g, const TwoTensor& r0, const Mat& x, double h) {
  const LieContext& ctx = *g.ctx;
  const int dim = ctx.dim();
  Mat gx = g.eval(x);
  Eigen::FullPivLU<Mat> lu(gx);
  if (!lu.isInvertible()) throw SingularValue("gauge_lhs: g(x) is singular");
  Mat ginv = lu.inverse();

  // a-th logarithmic derivative: g^{-1} * (d g along the direction dual to the
  // coordinate <., e_a>), i.e. along e_{dual(a)}.
  std::vector<Mat> logd(dim);
  for (int a = 0; a < dim; ++a)
    logd[a] = ginv * map_derivative(g, x, ctx.basis(ctx.dual_index(a)), h);

  TwoTensor D(ctx.n());
  for (int a = 0; a < dim; ++a) D.m.col(a) = ctx.flatten(logd[a]);

  Mat Adginv = ctx.Ad(ginv);
  TwoTensor T3 = r0.apply(Adginv, Adginv);

  // <id (x) id (x) x, [d_3 log g, d_3 log g]>: the basis legs carry the bracket
  // and are paired with x; the log-derivatives fill the two tensor slots.
  TwoTensor K(ctx.n());
  std::vector<Vec> flat(dim);
  for (int a = 0; a < dim; ++a) flat[a] = ctx.flatten(logd[a]);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      Mat br = ctx.basis(b) * ctx.basis(a) - ctx.basis(a) * ctx.basis(b);
      cplx w = LieContext::pairing(x, br);
      if (w != cplx{0, 0}) K.m += w * (flat[a] * flat[b].transpose());
    }

  return D - D.flip() + T3 + K;
}

double gauge_residual(const GValuedMap& g, const TwoTensor& r0, const Mat& x, double h) {
  TwoTensor lhs = gauge_lhs(g, r0, x, h);
  return (lhs - r_am(*g.ctx, x)).norm_inf();
}

}  // namespace monodromy
