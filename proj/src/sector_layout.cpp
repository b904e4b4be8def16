#include "monodromy/sector_layout.hpp"

#include <algorithm>
#include <cmath>

#include "monodromy/errors.hpp"

namespace monodromy {

namespace {

double wrap_2pi(double a) {
  double w = std::fmod(a, 2.0 * kPi);
  if (w < 0) w += 2.0 * kPi;
  return w;
}

}  // namespace

SectorLayout sector_layout(const Mat& A0, double base_direction,
                           double reg_margin, double ray_margin) {
  const int n = static_cast<int>(A0.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(A0(i, j)) > 0)
        throw DegenerateA0("sector_layout: A0 must be diagonal");

  std::vector<cplx> a(n);
  for (int i = 0; i < n; ++i) a[i] = A0(i, i);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(a[i] - a[j]) < reg_margin)
        throw DegenerateA0("sector_layout: A0 entries closer than the regularity margin");

  // Distinct ray directions of the root values a_i - a_j.
  std::vector<double> dirs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double th = wrap_2pi(std::arg(a[i] - a[j]));
      bool found = false;
      for (double d : dirs) {
        double diff = std::abs(th - d);
        diff = std::min(diff, 2.0 * kPi - diff);
        if (diff < 1e-10) { found = true; break; }
      }
      if (!found) dirs.push_back(th);
    }
  std::sort(dirs.begin(), dirs.end());
  if (dirs.size() % 2 != 0)
    throw DegenerateA0("sector_layout: odd ray count (direction dedup failed)");
  const int two_l = static_cast<int>(dirs.size());

  const double base = wrap_2pi(base_direction);
  for (double d : dirs) {
    double diff = std::abs(base - d);
    diff = std::min(diff, 2.0 * kPi - diff);
    if (diff < ray_margin)
      throw BaseOnRay("sector_layout: base direction lies on a Stokes ray");
  }

  // d_1 = first ray counterclockwise from the base direction.
  int k = 0;
  while (k < two_l && dirs[k] < base) ++k;
  double a1 = (k < two_l) ? dirs[k] : dirs[0] + 2.0 * kPi;
  int k1 = k % two_l;

  SectorLayout out;
  out.l = two_l / 2;
  out.base_direction = base;
  out.rays.resize(two_l);
  for (int m = 0; m < two_l; ++m) {
    double ang = dirs[(k1 + m) % two_l];
    // Unwrap counterclockwise starting from a_1.
    double base_ang = a1 + (ang - dirs[k1]);
    if (ang < dirs[k1]) base_ang += 2.0 * kPi;
    out.rays[m] = base_ang;
  }
  out.sect0_hi = a1;
  out.sect0_lo = out.rays[two_l - 1] - 2.0 * kPi;

  // Positive roots: those whose ray is one of d_1..d_l, i.e. whose direction
  // lies in the half-plane [a_1, a_1 + pi). Equivalently, order the entries of
  // A0 by the (descending) lexicographic key (Im(a e^{-i a_1}), Re(a e^{-i a_1})).
  cplx rot = std::exp(cplx(0.0, -a1));
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    cplx u = a[i] * rot, v = a[j] * rot;
    if (std::abs(u.imag() - v.imag()) > 1e-12) return u.imag() > v.imag();
    return u.real() > v.real();
  });
  out.ordering.n = n;
  out.ordering.position.assign(n, 0);
  for (int p = 0; p < n; ++p) out.ordering.position[order[p]] = p;
  out.phi_plus = out.ordering.positive_roots();

  // Cross-check the ordering against direct ray membership.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double th = wrap_2pi(std::arg(a[i] - a[j]));
      double rel = th - wrap_2pi(a1);
      if (rel < -1e-10) rel += 2.0 * kPi;
      bool in_plus = rel < kPi - 1e-10;
      if (in_plus != out.ordering.is_positive(i, j))
        throw DegenerateA0("sector_layout: inconsistent induced ordering");
    }

  return out;
}

}  // namespace monodromy
