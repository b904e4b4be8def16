#pragma once

#include "monodromy/factorization.hpp"
#include "monodromy/poisson_tensors.hpp"
#include "monodromy/reductions.hpp"

namespace monodromy {

struct GroupoidPoint {
  Mat h, x;
};

// Structure maps of the action groupoid G x g* over g* attached to a solution
// map g: source a(h,x) = x, target b(h,x) = h x h^{-1}, unit e(x) = (g(x), x)
// (so a(e(x)) = x exactly and b(e(x)) = Ad_{g(x)} x), multiplication
// (h1,x1)(h2,x2) = (h1 h2, x2) defined when x1 = h2 x2 h2^{-1}.
struct GroupoidMaps {
  std::function<Mat(const GroupoidPoint&)> source, target;
  std::function<GroupoidPoint(const Mat&)> unit;
  std::function<GroupoidPoint(const GroupoidPoint&, const GroupoidPoint&)> mult;
};
GroupoidMaps groupoid_maps(const LieContext& ctx, const GValuedMap& g,
                           double compose_tol = 1e-8);

// max_{f,g coordinate functions} |{a*f, b*g}| under the G x g* bivector at
// (h, x), with closed-form gradients.
double mixed_bracket_residual(const LieContext& ctx, const Mat& h, const Mat& x);

// v(h, x) = (g(x) h, g*(x)) where g*(x) is the conjugated factorization
// g(x) e^{x} g(x)^{-1} = b_- b_+^{-1}.
std::pair<Mat, GStarTriple> map_v(const LieContext& ctx, const GValuedMap& g,
                                  const Mat& h, const Mat& x);

// Residual of the defining identity ||g(x) e^{x} g(x)^{-1} - b_- b_+^{-1}||.
double map_v_identity_residual(const LieContext& ctx, const GValuedMap& g,
                               const Mat& x);

// F_g in the slice chart: (h, lambda) -> (g(h lambda h^{-1}) h, lambda).
SigmaPrimePoint F_prime_g(const GValuedMap& g, const SigmaPoint& p,
                          double margin = 1e-6);

}  // namespace monodromy
