#pragma once

#include "monodromy/gauge.hpp"
#include "monodromy/poisson_tensors.hpp"

namespace monodromy {

// A differentiable map between packed charts.
struct ChartMap {
  std::string name;
  int src_dim = 0;
  int dst_dim = 0;
  std::function<Vec(const Vec&)> eval;
};

// Max over coordinate triples (i,j,k) of the cyclic Jacobi sum
//   sum_l P^{il} d_l P^{jk} + P^{jl} d_l P^{ki} + P^{kl} d_l P^{ij}
// with central-difference derivatives (one Richardson level, step h).
double jacobi_residual(const TensorField& field, const Vec& point, double h);

// FD Jacobian of f at point (central differences, one Richardson level).
Mat chart_jacobian(const ChartMap& f, const Vec& point, double h);

// || J pi_src(point) J^T - pi_dst(f(point)) ||_max.
double poisson_map_residual(const ChartMap& f, const TensorField& src,
                            const TensorField& dst, const Vec& point, double h);

// The chart map F_g(h, lambda) = (g(2 pi i h lambda h^{-1}) h, 2 pi i lambda)
// from the slice chart into the dual-group chart.  The 2 pi i torus-coordinate
// factor is calibrated together with kappa below under the ray-geometry
// induced ordering of ctx (the same ordering the Stokes data is triangular
// with respect to); with the opposite ordering both signs flip.
ChartMap f_map_chart(const LieContext& ctx, const GValuedMap& g);

// ||(F_g)_* pi_sigma - kappa pi_r|| at (h, lambda).  The calibrated global
// scalar is kappa = 2 pi i (exact on diagonal configurations, frozen there).
double pushforward_residual(const LieContext& ctx, const GValuedMap& g,
                            const Mat& h, const Mat& lambda, double fd_step,
                            cplx kappa = kTwoPiI);

}  // namespace monodromy
