// Poisson geometry: Jacobi identities of the bivector fields, compatibility
// of the slice bivector with the slice 2-form, the Hamiltonian-reduction
// identities, and the groupoid structure maps.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "monodromy/forms.hpp"
#include "monodromy/groupoid.hpp"
#include "monodromy/reductions.hpp"
#include "monodromy/verifiers.hpp"

using namespace monodromy;

namespace {

struct Rng {
  std::uint64_t s;
  explicit Rng(unsigned seed) : s(seed * 0x9e3779b97f4a7c15ull + 1) {}
  double u() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return (z ^ (z >> 31)) * 0x1.0p-64 * 2.0 - 1.0;
  }
  cplx c() { double re = u(), im = u(); return {re, im}; }
  Mat matrix(int n, double scale) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = c();
    return m * (scale / m.norm());
  }
  Mat diag(int n, double scale) {
    Mat m = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = c();
    return m * (scale / m.norm());
  }
};

Mat regular_lambda(Rng& rng, int n, double spread) {
  Mat l = rng.diag(n, spread);
  for (int i = 0; i < n; ++i) l(i, i) += cplx(0.15 * (n - 1) - 0.3 * i, 0.0);
  return l;
}

}  // namespace

TEST_CASE("Jacobi identities of the five bivector fields") {
  LieContext ctx(2);
  Rng rng(3);
  Mat x = rng.matrix(2, 0.35);
  Mat h = Mat::Identity(2, 2) + 0.2 * rng.matrix(2, 1.0);
  Mat lam = regular_lambda(rng, 2, 0.1);
  CHECK(jacobi_residual(kks_field(ctx), pack_gstar(ctx, x), 1e-4) < 1e-6);
  CHECK(jacobi_residual(sts_field(ctx), pack_gstar(ctx, x), 1e-4) < 1e-6);
  CHECK(jacobi_residual(pi_am_field(ctx), pack_pair(ctx, h, x), 1e-4) < 1e-6);
  CHECK(jacobi_residual(pi_sigma_field(ctx), pack_torus_pair(ctx, h, lam),
                        1e-4) < 1e-6);
  CHECK(jacobi_residual(pi_r_field(ctx), pack_torus_pair(ctx, h, lam), 1e-4) <
        1e-6);
}

TEST_CASE("mutated tensor fails Jacobi (negative control)") {
  LieContext ctx(2);
  Rng rng(5);
  Mat x = rng.matrix(2, 0.35);
  Mat h = Mat::Identity(2, 2) + 0.2 * rng.matrix(2, 1.0);
  TwoTensor r0 = skew_part(standard_r(ctx));
  TensorField mutated{"mutated", &ctx, 2 * ctx.dim(), [&ctx, r0](const Vec& p) {
                        Mat hh, xx;
                        unpack_pair(ctx, p, hh, xx);
                        Mat P = pi_am_tensor(ctx, hh, xx);
                        Mat Rh = ctx.right_mult(hh);
                        P.block(0, 0, ctx.dim(), ctx.dim()) +=
                            Rh * r0.m * Rh.transpose();
                        return P;
                      }};
  CHECK(jacobi_residual(mutated, pack_pair(ctx, h, x), 1e-4) > 1e-2);
}

TEST_CASE("slice bivector inverts the slice 2-form") {
  LieContext ctx(2);
  Rng rng(7);
  Mat h = Mat::Identity(2, 2) + 0.2 * rng.matrix(2, 1.0);
  Mat lam = regular_lambda(rng, 2, 0.1);
  Mat P = pi_sigma_tensor(ctx, h, lam);
  Mat W = omega_sigma_matrix(ctx, h, lam);
  // P is the (pseudo)inverse of -W on its image: P W^T P = P.
  CHECK((P * W.transpose() * P - P).cwiseAbs().maxCoeff() < 1e-10);
  // Both are antisymmetric.
  CHECK((P + P.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((W + W.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("slice 2-form is antisymmetric in its arguments") {
  LieContext ctx(2);
  Rng rng(9);
  Mat lam = regular_lambda(rng, 2, 0.1);
  Mat X1 = rng.matrix(2, 1.0), X2 = rng.matrix(2, 1.0);
  Mat R1 = rng.diag(2, 1.0), R2 = rng.diag(2, 1.0);
  cplx a = omega_sigma(ctx, lam, X1, R1, X2, R2);
  cplx b = omega_sigma(ctx, lam, X2, R2, X1, R1);
  CHECK(std::abs(a + b) < 1e-13);
}

TEST_CASE("orbit pullback identity (algebraic)") {
  LieContext ctx(2);
  Mat A0 = Mat::Zero(2, 2);
  A0(0, 0) = 1.0;
  A0(1, 1) = -1.0;
  for (unsigned seed : {11u, 13u}) {
    Rng rng(seed);
    Mat g1 = Mat::Identity(2, 2) + 0.3 * rng.matrix(2, 1.0);
    Mat g2 = Mat::Identity(2, 2) + 0.3 * rng.matrix(2, 1.0);
    Mat lam0 = rng.diag(2, 0.4);
    for (int i = 0; i < 2; ++i) lam0(i, i) += cplx(0.5 - 1.0 * i, 0.0);
    Mat x1 = g1.partialPivLu().solve(lam0 * g1);
    Mat X1 = rng.matrix(2, 1.0), X2 = rng.matrix(2, 1.0);
    Mat R1 = rng.diag(2, 1.0), R2 = rng.diag(2, 1.0);
    OrbitPullbackValues v =
        reduction_orbit_pullback(ctx, A0, g1, x1, g2, X1, R1, X2, R2);
    CHECK(std::abs(v.upstairs - v.display) < 1e-10);
    CHECK(std::abs(v.downstairs - v.display) < 1e-10);
  }
}

TEST_CASE("orbit reduction requires a diagonalized residue") {
  LieContext ctx(2);
  Rng rng(15);
  Mat g1 = Mat::Identity(2, 2) + 0.3 * rng.matrix(2, 1.0);
  Mat x1 = rng.matrix(2, 0.5);  // Ad_{g1} x1 generically not diagonal
  CHECK_THROWS_AS(
      reduction_orbit_iota(ctx, g1, x1, Mat(Mat::Identity(2, 2))),
      ConstraintViolation);
}

TEST_CASE("reduced-monodromy 2-form agreement") {
  LieContext ctx(2);
  Rng rng(17);
  Mat h = Mat::Identity(2, 2) + 0.2 * rng.matrix(2, 1.0);
  Mat lam = regular_lambda(rng, 2, 0.1);
  Mat C = Mat::Identity(2, 2) + 0.2 * rng.matrix(2, 1.0);
  Mat dh1 = rng.matrix(2, 1.0), dl1 = rng.diag(2, 1.0), dc1 = rng.matrix(2, 1.0);
  Mat dh2 = rng.matrix(2, 1.0), dl2 = rng.diag(2, 1.0), dc2 = rng.matrix(2, 1.0);
  FormAgreementValues w = reduction_monodromy_form_agreement(ctx, h, lam, C, dh1, dl1,
                                                       dc1, dh2, dl2, dc2);
  CHECK(std::abs(w.upstairs - w.downstairs) < 1e-8);
}

TEST_CASE("groupoid structure maps") {
  LieContext ctx(2);
  Rng rng(19);
  Mat x = rng.matrix(2, 0.35);
  Mat h = Mat::Identity(2, 2) + 0.3 * rng.matrix(2, 1.0);
  GValuedMap g{&ctx, [](const Mat& y) { return Mat(Mat(0.3 * y).exp()); },
               nullptr, 1e-4};
  GroupoidMaps maps = groupoid_maps(ctx, g);
  // Source of the unit section is the identity, exactly.
  CHECK((maps.source(maps.unit(x)) - x).cwiseAbs().maxCoeff() == 0.0);
  // Target of the unit section conjugates by g(x).
  Mat gx = g.eval(x);
  CHECK((maps.target(maps.unit(x)) - gx * x * gx.inverse())
            .cwiseAbs()
            .maxCoeff() < 1e-13);
  // Composable pair multiplies the group parts and keeps the right base point.
  GroupoidPoint p2{h, x};
  GroupoidPoint p1{Mat(Mat::Identity(2, 2) + 0.2 * rng.matrix(2, 1.0)),
                   maps.target(p2)};
  GroupoidPoint prod = maps.mult(p1, p2);
  CHECK((prod.h - p1.h * p2.h).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((prod.x - p2.x).cwiseAbs().maxCoeff() == 0.0);
  // Non-composable pair is rejected.
  GroupoidPoint bad{h, Mat(rng.matrix(2, 0.5))};
  CHECK_THROWS_AS(maps.mult(bad, p2), NotComposable);
  CHECK(mixed_bracket_residual(ctx, h, x) < 1e-8);
  CHECK(map_v_identity_residual(ctx, g, x) < 1e-9);
}

TEST_CASE("torus margin guard") {
  Mat lam = Mat::Zero(2, 2);
  lam(0, 0) = 0.7;
  lam(1, 1) = -0.3;  // root value exactly 1
  CHECK_THROWS_AS(check_torus_margin(lam), ConstraintViolation);
}
