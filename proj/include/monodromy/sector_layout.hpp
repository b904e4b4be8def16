#pragma once

#include <utility>
#include <vector>

#include "monodromy/lie_context.hpp"

namespace monodromy {

//------------------------------------------------------------------------------
// SectorLayout: the Stokes-ray geometry of a regular diagonal leading
// coefficient A0. Rays are the directions of the root values (A0)_ii - (A0)_jj;
// there are 2l of them, symmetric under rotation by pi. Rays are labelled
// d_1..d_{2l} counterclockwise starting at the counterclockwise edge of the
// initial sector Sect_0, and the branch of log z is cut along d_1: the branch
// window for all angles is (angle(d_1) - 2*pi, angle(d_1)).
//------------------------------------------------------------------------------
struct SectorLayout {
  int l = 0;                    // half the number of rays
  std::vector<double> rays;     // unwrapped angles a_1 < a_2 < ... < a_{2l}, a_1 in [0, 2pi)
  double sect0_lo = 0;          // Sect_0 = (sect0_lo, sect0_hi)
  double sect0_hi = 0;          // = a_1 (position of the branch cut)
  double base_direction = 0;
  Ordering ordering;            // positive system induced by the crossing rule
  std::vector<std::pair<int, int>> phi_plus;  // positive roots as index pairs

  double bisector() const { return 0.5 * (sect0_lo + sect0_hi); }
  // Bisector of the opposite sector Sect_l within the branch window.
  double opposite_bisector() const { return bisector() - kPi; }
  double width() const { return sect0_hi - sect0_lo; }
};

// Computes the layout. Throws DegenerateA0 when A0 is non-diagonal or has two
// entries closer than reg_margin; BaseOnRay when base_direction is within
// ray_margin of a ray.
SectorLayout sector_layout(const Mat& A0, double base_direction,
                           double reg_margin = 1e-6, double ray_margin = 1e-8);

}  // namespace monodromy
