// Monodromy pipeline: canonical frames, connection and Stokes matrices, the
// monodromy relation, triangular structure, the dual-group factorizations,
// and robustness of the computed data to solver parameters.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "monodromy/factorization.hpp"
#include "monodromy/monodromy.hpp"
#include "monodromy/suite.hpp"

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

Mat gl2_A0() {
  Mat A0 = Mat::Zero(2, 2);
  A0(0, 0) = 1.0;
  A0(1, 1) = -1.0;
  return A0;
}

Mat gl3_A0() {
  Mat A0 = Mat::Zero(3, 3);
  A0(1, 1) = 1.0;
  A0(2, 2) = cplx(1.0, 1.0);
  return A0;
}

}  // namespace

TEST_CASE("diagonal residues collapse all monodromy data to the identity") {
  struct Case {
    Mat A0;
    double base;
  };
  for (const Case& c : {Case{gl2_A0(), kPi / 2.0}, Case{gl3_A0(), 1.0}}) {
    const int n = static_cast<int>(c.A0.rows());
    LieContext ctx(n);
    SectorLayout lay = sector_layout(c.A0, c.base);
    Mat x = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) x(i, i) = cplx(0.2 - 0.15 * i, 0.1 * i - 0.05);
    IrregularConnection conn(ctx, c.A0, x);
    MonodromyData md = monodromy_data(conn, lay, MonodromyOptions{});
    Mat I = Mat::Identity(n, n);
    CHECK((md.C - I).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((md.S_plus - I).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((md.S_minus - I).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("monodromy relation and Stokes structure on generic residues") {
  struct Case {
    Mat A0;
    double base;
    unsigned seed;
  };
  for (const Case& c : {Case{gl2_A0(), kPi / 2.0, 41}, Case{gl2_A0(), kPi / 2.0, 42},
                        Case{gl3_A0(), 1.0, 43}}) {
    const int n = static_cast<int>(c.A0.rows());
    LieContext ctx(n);
    SectorLayout lay = sector_layout(c.A0, c.base);
    Mat x = sample_matrix(n, c.seed, 0.4);
    IrregularConnection conn(ctx, c.A0, x);
    MonodromyData md = monodromy_data(conn, lay, MonodromyOptions{});
    CHECK(monodromy_relation_residual(md) < 1e-7);
    CHECK(stokes_structure_residual(lay.ordering, md.S_plus, true) < 1e-8);
    CHECK(stokes_structure_residual(lay.ordering, md.S_minus, false) < 1e-8);
    CHECK((md.delta_x - delta_projection(x)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("Stokes map lands in the dual group") {
  Mat A0 = gl2_A0();
  SectorLayout lay = sector_layout(A0, kPi / 2.0);
  LieContext ctx(2, lay.ordering);
  Mat x = sample_matrix(2, 51, 0.35);
  IrregularConnection conn(ctx, A0, x);
  GStarTriple t = stokes_map(conn, lay, MonodromyOptions{});
  CHECK(gstar_membership_residual(ctx, lay.ordering, t) < 1e-8);
  CHECK((t.Lambda - delta_projection(x)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("Gauss factorizations reconstruct their input") {
  LieContext ctx(2);
  Mat M = Mat::Identity(2, 2) + 0.3 * sample_matrix(2, 53, 1.0);
  GStarTriple t = dual_factorize(ctx, M);
  CHECK((t.b_minus.inverse() * t.b_plus - M).cwiseAbs().maxCoeff() < 1e-13);
  // Balanced diagonal normalization.
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(t.b_minus(i, i) * t.b_plus(i, i) - cplx{1.0, 0.0}) < 1e-13);
    CHECK(std::abs(t.b_plus(i, i) - std::exp(cplx(0.0, kPi) * t.Lambda(i, i))) <
          1e-12);
  }
  // Triangularity for the standard ordering.
  CHECK(std::abs(t.b_plus(1, 0)) < 1e-14);
  CHECK(std::abs(t.b_minus(0, 1)) < 1e-14);

  GStarTriple tc = conjugate_factorize(ctx, M);
  CHECK((tc.b_minus * tc.b_plus.inverse() - M).cwiseAbs().maxCoeff() < 1e-13);

  Mat anti = Mat::Zero(2, 2);
  anti(0, 1) = 1.0;
  anti(1, 0) = 1.0;
  CHECK_THROWS_AS(dual_factorize(ctx, anti), OutsideBigCell);
}

TEST_CASE("exponential factorization round trip") {
  LieContext ctx(2);
  Mat x = sample_matrix(2, 59, 0.3);
  GStarTriple t = map_I(ctx, x);
  CHECK((map_I_inverse(ctx, t) - x).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("connection matrix is robust to matching point and seed order") {
  Mat A0 = gl2_A0();
  SectorLayout lay = sector_layout(A0, kPi / 2.0);
  LieContext ctx(2);
  Mat x = sample_matrix(2, 61, 0.4);
  IrregularConnection conn(ctx, A0, x);
  MonodromyOptions opt;
  Mat C1 = connection_matrix(conn, lay, opt);
  MonodromyOptions opt2 = opt;
  opt2.match_radius = 0.5;
  CHECK((connection_matrix(conn, lay, opt2) - C1).cwiseAbs().maxCoeff() < 1e-9);
  MonodromyOptions opt3 = opt;
  opt3.seed.order_shift = 4;
  CHECK((connection_matrix(conn, lay, opt3) - C1).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("frame at infinity: series path and direct ODE path agree") {
  Mat A0 = gl2_A0();
  SectorLayout lay = sector_layout(A0, kPi / 2.0);
  LieContext ctx(2);
  Mat x = sample_matrix(2, 67, 0.4);
  IrregularConnection conn(ctx, A0, x);
  double theta = lay.bisector();
  cplx zm = std::exp(cplx(0.0, theta));
  // Path A: Frobenius series summed at its convergence radius, transported
  // inward in the H-gauge.
  Mat Fa = eval_F_infinity(conn, lay, zm, OdeOptions{});
  // Path B: series value far out, then the raw connection ODE inward.
  FormalSeries G = frobenius_Hinf(conn, 60);
  double R0 = series_radius_at_infinity(conn, G);
  cplx zb = R0 * std::exp(cplx(0.0, theta));
  Mat F0 = G.eval(1.0 / zb, G.order()) *
           Mat(x * cplx(std::log(R0), theta)).exp();
  auto rhs = [&](cplx z, const Mat& F) -> Mat {
    return (conn.A0 / (z * z) + conn.x / z) * F;
  };
  Mat Fb = integrate_path(rhs, F0, {PathSegment::radial(theta, R0, 1.0)},
                          OdeOptions{});
  CHECK((Fa - Fb).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("canonical sector frame solves the connection ODE") {
  Mat A0 = gl2_A0();
  SectorLayout lay = sector_layout(A0, kPi / 2.0);
  LieContext ctx(2);
  Mat x = sample_matrix(2, 71, 0.4);
  IrregularConnection conn(ctx, A0, x);
  double theta = lay.bisector();
  double r = 0.8, h = 1e-4;
  auto F = [&](double rr) {
    return eval_canonical_F(conn, lay, 0, rr * std::exp(cplx(0.0, theta)),
                            OdeOptions{}, SeedOptions{});
  };
  cplx z = r * std::exp(cplx(0.0, theta));
  Mat dF = (F(r + h) - F(r - h)) / (2.0 * h);
  Mat expect = std::exp(cplx(0.0, theta)) *
               ((conn.A0 / (z * z) + conn.x / z) * F(r));
  CHECK((dF - expect).cwiseAbs().maxCoeff() < 1e-6);
  CHECK_THROWS_AS(F(-0.5), ConfigError);  // angle outside the sector window
  CHECK_THROWS_AS(eval_canonical_F(conn, lay, 99, z, OdeOptions{}, SeedOptions{}),
                  ConfigError);
}
