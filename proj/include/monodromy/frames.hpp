#pragma once

#include "monodromy/formal_series.hpp"
#include "monodromy/ode.hpp"
#include "monodromy/sector_layout.hpp"

namespace monodromy {

struct SeedOptions {
  int max_order = 40;       // cap on the truncation order of the pole series
  double seed_tol = 1e-14;  // target size of the first omitted term
  int order_shift = 0;      // extra terms past the least term (robustness probe)
  double min_radius = 1e-3; // give up (SeedAccuracy) below this seed radius
  double max_radius = 0.25;
};

// Seed radius and truncation order chosen so the least term of the divergent
// pole series is below seed_tol (optimal truncation).
struct SeedChoice {
  double r0 = 0;
  int order = 0;
  double omitted = 0;  // size of the first omitted term
};
SeedChoice choose_seed(const FormalSeries& s, const SeedOptions& opt);

// H-value of the canonical solution attached to the sector whose bisector has
// continuous angle theta_seed. Two seeds with the optimally truncated series
// are placed a half-turn apart around the bisector (both inside the
// supersector), each integrated radially out to r_target and along the arc to
// theta_target; the constant discrepancy between the two runs is split into
// opposite unit-triangular factors (dominance order at the seed directions)
// and divided out, which removes the seed contamination in the modes that are
// dominant along either seed ray. A single seed cannot do this once there are
// two or more distinct singulant moduli.
Mat canonical_H(const IrregularConnection& conn, const FormalSeries& s,
                double theta_seed, double r_target, double theta_target,
                const OdeOptions& ode, const SeedOptions& seed);

// F = H * exp(-A0/z) * exp(delta(x) (log r + i theta)).
Mat frame_from_H(const IrregularConnection& conn, const Mat& H, double r,
                 double theta);

// Canonical solution F_i on sector `sector_index` (0-based; 0 is the initial
// sector) evaluated at z, with the angle of z taken in that sector's window of
// the cut plane. The frame is NOT continued across rays: z must lie in the
// closed sector up to a small tolerance.
Mat eval_canonical_F(const IrregularConnection& conn, const SectorLayout& lay,
                     int sector_index, cplx z, const OdeOptions& ode,
                     const SeedOptions& seed);

// Radius at which the (convergent) series at infinity is summed.
double series_radius_at_infinity(const IrregularConnection& conn,
                                 const FormalSeries& G, double tail_tol = 1e-14);

// H-value of the solution F = H z^x at radius r_target, angle theta_target:
// sums the Frobenius series at the series radius, then integrates an arc to
// theta_target followed by a radial piece inward to r_target.
Mat hinf_value(const IrregularConnection& conn, const FormalSeries& G,
               double r_target, double theta_target, const OdeOptions& ode,
               double tail_tol = 1e-14);

// F_infinity(z) with the angle of z taken in the branch window of the layout.
Mat eval_F_infinity(const IrregularConnection& conn, const SectorLayout& lay,
                    cplx z, const OdeOptions& ode);

// Angle of z as a continuous coordinate in the branch window
// (lay.sect0_hi - 2 pi, lay.sect0_hi].
double branch_angle(const SectorLayout& lay, cplx z);

}  // namespace monodromy
