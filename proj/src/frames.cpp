#include "monodromy/frames.hpp"

#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "monodromy/errors.hpp"

namespace monodromy {

namespace {

std::vector<double> coeff_norms(const FormalSeries& s) {
  std::vector<double> h(s.coeffs.size());
  for (size_t k = 0; k < s.coeffs.size(); ++k)
    h[k] = s.coeffs[k].cwiseAbs().maxCoeff();
  return h;
}

// Least term of the series at radius r, restricted to orders <= limit.
std::pair<double, int> least_term(const std::vector<double>& h, double r,
                                  int limit) {
  double best = std::numeric_limits<double>::infinity();
  int arg = 1;
  double p = 1.0;
  for (int k = 1; k <= limit; ++k) {
    p *= r;
    double t = h[k] * p;
    if (t < best) {
      best = t;
      arg = k;
    }
  }
  return {best, arg};
}

Mat pole_rhs_H(const IrregularConnection& conn, cplx z, const Mat& H) {
  Mat dH = conn.A0 * H - H * conn.A0 +
           z * (conn.x * H - H * conn.x.diagonal().asDiagonal().toDenseMatrix());
  return dH / (z * z);
}

Mat inf_rhs_H(const IrregularConnection& conn, cplx z, const Mat& H) {
  Mat dH = conn.A0 * H + z * (conn.x * H - H * conn.x);
  return dH / (z * z);
}

}  // namespace

SeedChoice choose_seed(const FormalSeries& s, const SeedOptions& opt) {
  std::vector<double> h = coeff_norms(s);
  // Keep order_shift extra terms in reserve below the series cap.
  const int limit = std::max(1, std::min<int>(s.order(), opt.max_order) -
                                    std::max(0, opt.order_shift));
  double lo = opt.min_radius, hi = opt.max_radius;
  if (least_term(h, lo, limit).first > opt.seed_tol)
    throw SeedAccuracy("choose_seed: series too divergent at the minimum radius");
  if (least_term(h, hi, limit).first > opt.seed_tol) {
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (least_term(h, mid, limit).first <= opt.seed_tol ? lo : hi) = mid;
    }
    hi = lo;
  }
  auto [omitted, kmin] = least_term(h, hi, limit);
  SeedChoice c;
  c.r0 = hi;
  c.order = std::min<int>(kmin - 1 + std::max(0, opt.order_shift), s.order());
  c.omitted = omitted;
  return c;
}

namespace {

// Single-seed value: truncated series at (r0, theta_seed), radial out, then
// the arc to theta_target. The result is the canonical solution composed with
// a constant contamination factor supported on the mode pairs that are
// exponentially dominant along theta_seed (the optimally truncated seed is
// only clean in the recessive modes of its own direction).
Mat canonical_H_single(const IrregularConnection& conn, const FormalSeries& s,
                       double theta_seed, double r_target, double theta_target,
                       const OdeOptions& ode, const SeedOptions& seed) {
  SeedChoice c = choose_seed(s, seed);
  cplx z0 = c.r0 * std::exp(cplx(0.0, theta_seed));
  Mat H0 = s.eval(z0, c.order);
  std::vector<PathSegment> path;
  if (std::abs(r_target - c.r0) > 0)
    path.push_back(PathSegment::radial(theta_seed, c.r0, r_target));
  if (std::abs(theta_target - theta_seed) > 0)
    path.push_back(PathSegment::arc(r_target, theta_seed, theta_target));
  auto rhs = [&conn](cplx z, const Mat& H) { return pole_rhs_H(conn, z, H); };
  return integrate_path(rhs, H0, path, ode);
}

// Splits G = TA^{-1} TB where TA is unit-diagonal and supported on the pairs
// (i, j) with v_i > v_j and TB on the complementary pairs. Returns TA. The
// factorization is the unit-unit Gauss splitting in the total order sorted by
// v; its consistency (diagonal of the TB factor equal to 1) certifies the
// complementary support assumption and is checked to diag_tol.
Mat split_contamination(const Mat& G, const std::vector<double>& v,
                        double diag_tol) {
  const int d = static_cast<int>(G.rows());
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&v](int a, int b) { return v[a] > v[b]; });
  Mat Gh(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) Gh(a, b) = G(idx[a], idx[b]);
  // Want unit-upper U and unit-lower L with U * Gh = L: eliminate the strict
  // upper triangle of Gh row by row from the bottom.
  Mat U = Mat::Identity(d, d);
  Mat L = Gh;
  for (int i = d - 2; i >= 0; --i) {
    int m = d - 1 - i;
    Mat A = L.block(i + 1, i + 1, m, m);
    Vec b = L.row(i).segment(i + 1, m).transpose();
    Vec u = A.transpose().partialPivLu().solve(Vec(-b));
    U.row(i).segment(i + 1, m) = u.transpose();
    L.row(i) += u.transpose() * Gh.block(i + 1, 0, m, d);
  }
  for (int i = 0; i < d; ++i)
    if (std::abs(L(i, i) - cplx{1.0, 0.0}) > diag_tol)
      throw SeedAccuracy(
          "canonical_H: seed recombination inconsistent (non-unit diagonal)");
  Mat TA(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) TA(idx[a], idx[b]) = U(a, b);
  return TA;
}

}  // namespace

Mat canonical_H(const IrregularConnection& conn, const FormalSeries& s,
                double theta_seed, double r_target, double theta_target,
                const OdeOptions& ode, const SeedOptions& seed) {
  const int n = conn.ctx->n();
  if (n == 1)
    return canonical_H_single(conn, s, theta_seed, r_target, theta_target, ode,
                              seed);
  // Two seeds a half-turn apart, both inside the supersector of the sector
  // bisected by theta_seed. Each single-seed value is the canonical solution
  // times a constant unit-triangular contamination factor in the dominance
  // order of its own seed direction; the two orders are opposite (every mode
  // pair flips dominance exactly once strictly between the two directions),
  // so the discrepancy G = F_A^{-1} F_B = T_A^{-1} T_B splits uniquely and
  // the contamination is removed exactly.
  const double thA = theta_seed - 0.5 * kPi;
  const double thB = theta_seed + 0.5 * kPi;
  Mat HA = canonical_H_single(conn, s, thA, r_target, theta_target, ode, seed);
  Mat HB = canonical_H_single(conn, s, thB, r_target, theta_target, ode, seed);
  Mat FA = frame_from_H(conn, HA, r_target, theta_target);
  Mat FB = frame_from_H(conn, HB, r_target, theta_target);
  Mat G = FA.partialPivLu().solve(FB);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = std::real(conn.A0(i, i) * std::exp(cplx(0.0, -thA)));
  // G = C_A^{-1} C_B with C_A = TA the contamination of run A, so the clean
  // frame is F_A C_A^{-1}.
  Mat TA = split_contamination(G, v, 1e-5);
  Mat F0 = FA * TA.inverse();
  // Back to the H gauge: H = F * z^{-delta(x)} e^{A0/z} (diagonal factors).
  cplx z = r_target * std::exp(cplx(0.0, theta_target));
  cplx Lg(std::log(r_target), theta_target);
  Mat H = F0;
  for (int j = 0; j < n; ++j)
    H.col(j) *= std::exp(conn.A0(j, j) / z - conn.x(j, j) * Lg);
  return H;
}

Mat frame_from_H(const IrregularConnection& conn, const Mat& H, double r,
                 double theta) {
  const int n = conn.ctx->n();
  cplx z = r * std::exp(cplx(0.0, theta));
  cplx L(std::log(r), theta);
  Mat F = H;
  for (int j = 0; j < n; ++j) {
    cplx factor = std::exp(-conn.A0(j, j) / z + conn.x(j, j) * L);
    F.col(j) *= factor;
  }
  return F;
}

double branch_angle(const SectorLayout& lay, cplx z) {
  double th = std::arg(z);
  while (th > lay.sect0_hi + 1e-15) th -= 2.0 * kPi;
  while (th <= lay.sect0_hi - 2.0 * kPi + 1e-15) th += 2.0 * kPi;
  return th;
}

Mat eval_canonical_F(const IrregularConnection& conn, const SectorLayout& lay,
                     int sector_index, cplx z, const OdeOptions& ode,
                     const SeedOptions& seed) {
  const int two_l = 2 * lay.l;
  if (sector_index < 0 || sector_index >= two_l)
    throw ConfigError("eval_canonical_F: sector index out of range");
  double lo, hi;
  if (sector_index == 0) {
    lo = lay.sect0_lo;
    hi = lay.sect0_hi;
  } else {
    lo = lay.rays[sector_index - 1] - 2.0 * kPi;
    hi = lay.rays[sector_index] - 2.0 * kPi;
  }
  double theta = branch_angle(lay, z);
  if (theta < lo - 1e-9 || theta > hi + 1e-9)
    throw ConfigError("eval_canonical_F: z outside the requested sector");
  FormalSeries s = formal_H_series(conn, seed.max_order);
  Mat H = canonical_H(conn, s, 0.5 * (lo + hi), std::abs(z), theta, ode, seed);
  return frame_from_H(conn, H, std::abs(z), theta);
}

double series_radius_at_infinity(const IrregularConnection& conn,
                                 const FormalSeries& G, double tail_tol) {
  std::vector<double> h = coeff_norms(G);
  const int K = G.order();
  double R0 = std::max(2.0, 2.0 * conn.A0.cwiseAbs().maxCoeff());
  for (int it = 0; it < 40; ++it) {
    // The series in 1/z converges everywhere; require the last kept terms to
    // be below the tail tolerance.
    double tail = std::max(h[K] * std::pow(R0, -K),
                           h[K - 1] * std::pow(R0, -(K - 1)));
    if (tail <= tail_tol) return R0;
    R0 *= 1.5;
  }
  throw SeedAccuracy("series_radius_at_infinity: tail tolerance unreachable");
}

Mat hinf_value(const IrregularConnection& conn, const FormalSeries& G,
               double r_target, double theta_target, const OdeOptions& ode,
               double tail_tol) {
  double R0 = series_radius_at_infinity(conn, G, tail_tol);
  cplx z0 = R0 * std::exp(cplx(0.0, theta_target));
  Mat H0 = G.eval(1.0 / z0, G.order());
  std::vector<PathSegment> path;
  if (std::abs(r_target - R0) > 0)
    path.push_back(PathSegment::radial(theta_target, R0, r_target));
  auto rhs = [&conn](cplx z, const Mat& H) { return inf_rhs_H(conn, z, H); };
  return integrate_path(rhs, H0, path, ode);
}

Mat eval_F_infinity(const IrregularConnection& conn, const SectorLayout& lay,
                    cplx z, const OdeOptions& ode) {
  FormalSeries G = frobenius_Hinf(conn, 60);
  double r = std::abs(z), theta = branch_angle(lay, z);
  Mat H = hinf_value(conn, G, r, theta, ode);
  cplx L(std::log(r), theta);
  return H * Mat(conn.x * L).exp();
}

}  // namespace monodromy
