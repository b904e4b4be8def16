#include "monodromy/rmatrix.hpp"

#include <cmath>

#include "monodromy/scalar_ad.hpp"

namespace monodromy {

namespace {

constexpr double kCrossover = 0.5;

// Taylor coefficients of phi: phi(z) = sum_k B_{2k}/(2k)! z^{2k-1}.
constexpr double kPhiCoef[] = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -6.7818010573066e-10,   // B12/12!  = -691/2730/479001600
    1.7161094265876e-11,    // B14/14!
    -4.3436809916613e-13,   // B16/16!
};

void check_pole(cplx z, double guard) {
  double k = std::round(z.imag() / (2.0 * kPi));
  if (k != 0.0) {
    cplx pole{0.0, 2.0 * kPi * k};
    if (std::abs(z - pole) < guard) throw PoleHit("phi: argument within guard of 2*pi*i*k");
  }
}

}  // namespace

cplx phi(cplx z, double guard) {
  check_pole(z, guard);
  if (std::abs(z) < kCrossover) {
    cplx z2 = z * z, p = z, s{0, 0};
    for (double c : kPhiCoef) {
      s += c * p;
      p *= z2;
    }
    return s;
  }
  return -1.0 / z + 0.5 / std::tanh(0.5 * z);
}

cplx half_z_coth_half_z(cplx z, double guard) {
  // (1/2) z coth(z/2) = 1 + z * phi(z)
  check_pole(z, guard);
  if (std::abs(z) < kCrossover) return 1.0 + z * phi(z, guard);
  return 0.5 * z / std::tanh(0.5 * z);
}

TwoTensor r_am(const LieContext& ctx, const Mat& x, double guard) {
  auto f = [guard](cplx z) { return phi(z, guard); };
  LinOp op = scalar_function_of_ad(ctx, f, x);
  return casimir(ctx).apply(Mat::Identity(ctx.dim(), ctx.dim()), op.op);
}

DynamicalRMatrix r_am_field(const LieContext& ctx) {
  return DynamicalRMatrix{&ctx, [&ctx](const Mat& x) { return r_am(ctx, x); }};
}

ThreeTensor cdybe_residual(const DynamicalRMatrix& r, const Mat& x, double h) {
  const LieContext& ctx = *r.ctx;
  TwoTensor rx = r.eval(x);
  ThreeTensor out = bracket_12_13(ctx, rx, rx) + bracket_12_23(ctx, rx, rx) +
                    bracket_13_23(ctx, rx, rx);

  // Alt(dr): dr = sum_a e_a (x) (derivative of r along the direction dual to
  // the coordinate <., e_a>). With r skew, the cyclic antisymmetrization that
  // enters the equation equals -1/2 times the six-term alternation.
  double step = h * std::max(1.0, x.norm());
  ThreeTensor dr(ctx.n());
  for (int a = 0; a < ctx.dim(); ++a) {
    Mat dir = ctx.basis(ctx.dual_index(a));
    auto central = [&](double s) {
      TwoTensor plus = r.eval(x + s * dir), minus = r.eval(x - s * dir);
      TwoTensor d(ctx.n());
      d.m = (plus.m - minus.m) / (2.0 * s);
      return d;
    };
    TwoTensor d1 = central(step), d2 = central(step / 2.0);
    TwoTensor d(ctx.n());
    d.m = (4.0 * d2.m - d1.m) / 3.0;
    add_slotted(dr, 0, a, d);
  }
  return out - dr.alt() * 0.5;
}

}  // namespace monodromy
