#include "monodromy/poisson_tensors.hpp"

#include "monodromy/rmatrix.hpp"
#include "monodromy/scalar_ad.hpp"

namespace monodromy {

namespace {

// Internal symmetry check followed by exact antisymmetrization.
Mat finalize(const Mat& P) {
  double scale = std::max(1.0, P.cwiseAbs().maxCoeff());
  double asym = (P + P.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale)
    throw Error("bivector assembly produced an asymmetric tensor");
  return 0.5 * (P - P.transpose());
}

}  // namespace

Vec pack_gstar(const LieContext& ctx, const Mat& x) { return ctx.flatten(x); }

Mat unpack_gstar(const LieContext& ctx, const Vec& p) { return ctx.unflatten(p); }

Vec pack_pair(const LieContext& ctx, const Mat& h, const Mat& x) {
  Vec p(2 * ctx.dim());
  p << ctx.flatten(h), ctx.flatten(x);
  return p;
}

void unpack_pair(const LieContext& ctx, const Vec& p, Mat& h, Mat& x) {
  const int d = ctx.dim();
  h = ctx.unflatten(p.head(d));
  x = ctx.unflatten(p.tail(d));
}

Vec pack_torus_pair(const LieContext& ctx, const Mat& h, const Mat& lambda) {
  const int d = ctx.dim(), n = ctx.n();
  Vec p(d + n);
  p.head(d) = ctx.flatten(h);
  for (int j = 0; j < n; ++j) p(d + j) = lambda(j, j);
  return p;
}

void unpack_torus_pair(const LieContext& ctx, const Vec& p, Mat& h, Mat& lambda) {
  const int d = ctx.dim(), n = ctx.n();
  h = ctx.unflatten(p.head(d));
  lambda = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) lambda(j, j) = p(d + j);
}

void check_torus_margin(const Mat& lambda, double margin) {
  const int n = static_cast<int>(lambda.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      cplx a = lambda(i, i) - lambda(j, j);
      double k = std::round(a.real());
      if (std::abs(a - cplx(k, 0.0)) < margin)
        throw ConstraintViolation(
            "regular-torus guard: a root value is within margin of an integer");
    }
}

Mat kks_tensor(const LieContext& ctx, const Mat& x) {
  const int d = ctx.dim();
  Mat P = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    Mat ea = ctx.basis(ctx.dual_index(a));
    for (int b = a + 1; b < d; ++b) {
      Mat eb = ctx.basis(ctx.dual_index(b));
      cplx v = LieContext::pairing(x, ea * eb - eb * ea);
      P(a, b) = v;
      P(b, a) = -v;
    }
  }
  return finalize(P);
}

Mat sts_tensor(const LieContext& ctx, const Mat& x) {
  Mat adm = ctx.ad(x);
  LinOp g = scalar_function_of_ad(
      ctx, [](cplx z) { return half_z_coth_half_z(z); }, x);
  TwoTensor r0 = skew_part(standard_r(ctx));
  TwoTensor T = casimir(ctx).apply(adm, g.op) - r0.apply(adm, adm);
  return finalize(T.m);
}

Mat pi_am_tensor(const LieContext& ctx, const Mat& h, const Mat& x) {
  const int d = ctx.dim();
  Mat P = Mat::Zero(2 * d, 2 * d);
  // g* x g* block.
  P.block(d, d, d, d) = kks_tensor(ctx, x);
  // G x G block: l_h(r_am(x)) - r_h(r0).
  Mat Lh = ctx.left_mult(h), Rh = ctx.right_mult(h);
  TwoTensor r0 = skew_part(standard_r(ctx));
  P.block(0, 0, d, d) =
      Lh * r_am(ctx, x).m * Lh.transpose() - Rh * r0.m * Rh.transpose();
  // theta = sum_a d/dx^a ^ l_h(e_a); the coordinate x^a = <x, e_a> is the
  // entry coordinate dual(a).
  for (int a = 0; a < d; ++a) {
    Vec lv = ctx.flatten(h * ctx.basis(a));
    P.row(d + ctx.dual_index(a)).head(d) += lv.transpose();
    P.col(d + ctx.dual_index(a)).head(d) -= lv;
  }
  return finalize(P);
}

Mat pi_sigma_tensor(const LieContext& ctx, const Mat& h, const Mat& lambda,
                    double margin) {
  check_torus_margin(lambda, margin);
  const int d = ctx.dim(), n = ctx.n();
  Mat P = Mat::Zero(d + n, d + n);
  Mat Lh = ctx.left_mult(h);
  LinOp adinv = ad_inverse_restricted(ctx, lambda);
  TwoTensor A = casimir(ctx).apply(Mat::Identity(d, d), adinv.op);
  P.block(0, 0, d, d) = Lh * A.m * Lh.transpose();
  // l_h(t_j) ^ d/dt^j, oriented so that the total tensor satisfies Jacobi
  // together with the inverse-ad block above.
  for (int j = 0; j < n; ++j) {
    Vec lv = ctx.flatten(h * ctx.basis(ctx.idx(j, j)));
    P.col(d + j).head(d) -= lv;
    P.row(d + j).head(d) += lv.transpose();
  }
  return finalize(P);
}

Mat pi_r_tensor(const LieContext& ctx, const Mat& h, const Mat& lambda,
                double margin) {
  const int d = ctx.dim();
  Mat P = pi_sigma_tensor(ctx, h, lambda, margin);
  Mat Lh = ctx.left_mult(h), Rh = ctx.right_mult(h);
  TwoTensor r0 = skew_part(standard_r(ctx));
  P.block(0, 0, d, d) +=
      Lh * r_am(ctx, lambda).m * Lh.transpose() - Rh * r0.m * Rh.transpose();
  return finalize(P);
}

Mat omega_sigma_matrix(const LieContext& ctx, const Mat& h, const Mat& lambda) {
  const int d = ctx.dim(), n = ctx.n();
  Mat hinv = h.partialPivLu().inverse();
  std::vector<Mat> X(d);
  for (int a = 0; a < d; ++a) X[a] = hinv * ctx.basis(a);
  Mat W = Mat::Zero(d + n, d + n);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      cplx v = -LieContext::pairing(lambda, X[a] * X[b] - X[b] * X[a]);
      W(a, b) = v;
      W(b, a) = -v;
    }
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < n; ++j) {
      // v1 = (X_a, 0), v2 = (0, e_jj): value -<e_jj, X_a>.
      W(a, d + j) = -X[a](j, j);
      W(d + j, a) = X[a](j, j);
    }
  return finalize(W);
}

TensorField kks_field(const LieContext& ctx) {
  const LieContext* c = &ctx;
  return TensorField{"kks", c, c->dim(),
                     [c](const Vec& p) { return kks_tensor(*c, unpack_gstar(*c, p)); }};
}

TensorField sts_field(const LieContext& ctx) {
  const LieContext* c = &ctx;
  return TensorField{"sts", c, c->dim(),
                     [c](const Vec& p) { return sts_tensor(*c, unpack_gstar(*c, p)); }};
}

TensorField pi_am_field(const LieContext& ctx) {
  const LieContext* c = &ctx;
  return TensorField{"pi_am", c, 2 * c->dim(), [c](const Vec& p) {
                       Mat h, x;
                       unpack_pair(*c, p, h, x);
                       return pi_am_tensor(*c, h, x);
                     }};
}

TensorField pi_sigma_field(const LieContext& ctx) {
  const LieContext* c = &ctx;
  return TensorField{"pi_sigma", c, c->dim() + c->n(), [c](const Vec& p) {
                       Mat h, lam;
                       unpack_torus_pair(*c, p, h, lam);
                       return pi_sigma_tensor(*c, h, lam);
                     }};
}

TensorField pi_r_field(const LieContext& ctx) {
  const LieContext* c = &ctx;
  return TensorField{"pi_r", c, c->dim() + c->n(), [c](const Vec& p) {
                       Mat h, lam;
                       unpack_torus_pair(*c, p, h, lam);
                       return pi_r_tensor(*c, h, lam);
                     }};
}

}  // namespace monodromy
