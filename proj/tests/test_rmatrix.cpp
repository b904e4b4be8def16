// Dynamical r-matrix: the phi kernel, the Alekseev-Meinrenken field, the
// dynamical Yang-Baxter residual, and the gauge-transformation residual of the
// connection-matrix field.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "monodromy/gauge.hpp"
#include "monodromy/monodromy.hpp"
#include "monodromy/rmatrix.hpp"

using namespace monodromy;

namespace {

Mat sample_matrix(int n, unsigned seed, double scale) {
  Mat m(n, n);
  std::uint64_t s = seed * 0x9e3779b97f4a7c15ull + 1;
  auto next = [&s]() {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return (z ^ (z >> 31)) * 0x1.0p-64 * 2.0 - 1.0;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(next(), next());
  return m * (scale / m.norm());
}

cplx phi_closed(cplx z) {
  return -1.0 / z + 0.5 * std::cosh(0.5 * z) / std::sinh(0.5 * z);
}

}  // namespace

TEST_CASE("phi kernel: series regime, closed form, oddness, poles") {
  // Leading behaviour phi(z) = z/12 - z^3/720 + O(z^5).
  cplx small = phi(cplx(1e-3, 0.0));
  CHECK(std::abs(small - cplx(1e-3 / 12.0 - 1e-9 / 720.0, 0.0)) < 1e-15);
  // Series and closed form agree across moderate arguments.
  for (cplx z : {cplx(0.3, 0.2), cplx(1.0, -0.7), cplx(2.5, 1.0)})
    CHECK(std::abs(phi(z) - phi_closed(z)) < 1e-12);
  // Odd function.
  cplx z0(0.7, 0.4);
  CHECK(std::abs(phi(z0) + phi(-z0)) < 1e-13);
  // Pole guard at 2 pi i.
  CHECK_THROWS_AS(phi(kTwoPiI), PoleHit);
  // Even companion with value 1 at the origin.
  CHECK(std::abs(half_z_coth_half_z(cplx(0.0, 0.0)) - cplx(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(half_z_coth_half_z(z0) - half_z_coth_half_z(-z0)) < 1e-13);
}

TEST_CASE("r_am vanishes at 0 and is antisymmetric") {
  LieContext ctx(2);
  CHECK(r_am(ctx, Mat::Zero(2, 2)).norm_inf() < 1e-13);
  Mat x = sample_matrix(2, 3, 0.4);
  TwoTensor r = r_am(ctx, x);
  CHECK((r.m + r.flip().m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("r_am is equivariant under conjugation") {
  LieContext ctx(2);
  Mat x = sample_matrix(2, 5, 0.4);
  Mat h = Mat::Identity(2, 2) + 0.3 * sample_matrix(2, 7, 1.0);
  Mat hinv = h.inverse();
  TwoTensor lhs = r_am(ctx, Mat(h * x * hinv));
  Mat Adh = ctx.Ad(h);
  TwoTensor rhs = r_am(ctx, x).apply(Adh, Adh);
  CHECK((lhs.m - rhs.m).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("r_am domain guard near the 2 pi i lattice") {
  LieContext ctx(2);
  Mat x = Mat::Zero(2, 2);
  x(0, 0) = cplx(0.0, kPi);
  x(1, 1) = cplx(0.0, -kPi);  // ad-eigenvalue difference 2 pi i
  CHECK_THROWS_AS(r_am(ctx, x), PoleHit);
}

TEST_CASE("dynamical Yang-Baxter residual with negative control") {
  LieContext ctx(2);
  Mat x = sample_matrix(2, 11, 0.4);
  TwoTensor half_t = casimir(ctx) * cplx{0.5, 0.0};
  DynamicalRMatrix full{&ctx, [&ctx, half_t](const Mat& y) {
                          return r_am(ctx, y) + half_t;
                        }};
  CHECK(cdybe_residual(full, x, 1e-4).norm_inf() < 1e-8);
  DynamicalRMatrix control{&ctx, [half_t](const Mat&) { return half_t; }};
  CHECK(cdybe_residual(control, x, 1e-4).norm_inf() > 1e-2);
}

TEST_CASE("directional derivative fallback matches an analytic derivative") {
  LieContext ctx(2);
  GValuedMap g{&ctx, [](const Mat& x) { return Mat(x.exp()); }, nullptr, 1e-4};
  Mat dir = sample_matrix(2, 13, 1.0);
  // d/ds exp(s dir)|_0 = dir.
  Mat d = map_derivative(g, Mat::Zero(2, 2), dir, 1e-4);
  CHECK((d - dir).cwiseAbs().maxCoeff() < 1e-10);
  // An injected analytic derivative takes precedence over the FD fallback.
  GValuedMap ga = g;
  ga.derivative = [](const Mat&, const Mat&) { return Mat(Mat::Zero(2, 2)); };
  CHECK(map_derivative(ga, Mat::Zero(2, 2), dir, 1e-4).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("connection-matrix field satisfies the gauge equation") {
  Mat A0 = Mat::Zero(2, 2);
  A0(0, 0) = 1.0;
  A0(1, 1) = -1.0;
  SectorLayout lay = sector_layout(A0, kPi / 2.0);
  LieContext ctx(2, lay.ordering);
  TwoTensor r0 = skew_part(standard_r(ctx));
  GValuedMap g = c2pii_field(ctx, A0, lay, MonodromyOptions{});
  Mat x = sample_matrix(2, 17, 0.35);
  CHECK(gauge_residual(g, r0, x, 1e-4) < 1e-5);
  // The identity map is far from solving the equation at the same point.
  GValuedMap gid{&ctx, [](const Mat&) { return Mat(Mat::Identity(2, 2)); },
                 nullptr, 1e-4};
  CHECK(gauge_residual(gid, r0, x, 1e-4) > 1e-2);
}
