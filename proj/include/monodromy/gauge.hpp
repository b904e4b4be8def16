#pragma once

#include <functional>

#include "monodromy/tensors.hpp"

namespace monodromy {

// A differentiable map g* -> G. When `derivative` is absent, directional
// derivatives are taken by central differences with one Richardson level and
// per-direction step fd_step * max(1, |x|).
struct GValuedMap {
  const LieContext* ctx = nullptr;
  std::function<Mat(const Mat&)> eval;
  // Optional analytic directional derivative: (x, dir) -> d/ds g(x + s dir)|_0.
  std::function<Mat(const Mat&, const Mat&)> derivative;
  double fd_step = 1e-4;
};

// Directional derivative of a map at x along dir (FD fallback with Richardson).
Mat map_derivative(const GValuedMap& g, const Mat& x, const Mat& dir, double h);

// Left side of the gauge transformation equation at x:
//   D - flip(D) + (Ad_{g^-1} (x) Ad_{g^-1})(r0) + K
// where D = sum_a [g^{-1} (d g along the dual of e_a)] (x) e_a and
// K_{ab} = <x, [g^{-1} d_a g, g^{-1} d_b g]> e_a (x) e_b.
TwoTensor gauge_lhs(const GValuedMap& g, const TwoTensor& r0, const Mat& x, double h);

// Max-norm distance between gauge_lhs and r_am at x.
double gauge_residual(const GValuedMap& g, const TwoTensor& r0, const Mat& x, double h);

}  // namespace monodromy
