#pragma once

#include <functional>
#include <vector>

#include "monodromy/lie_context.hpp"

namespace monodromy {

struct OdeOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double initial_step = 1e-3;
};

// A path in C* built from radial pieces (constant angle) and arcs (constant
// radius). Angles are continuous coordinates on the universal cover.
struct PathSegment {
  double r0 = 0, r1 = 0;    // radii (equal on an arc)
  double th0 = 0, th1 = 0;  // angles (equal on a radial piece)
  static PathSegment radial(double theta, double ra, double rb) {
    return {ra, rb, theta, theta};
  }
  static PathSegment arc(double r, double tha, double thb) {
    return {r, r, tha, thb};
  }
  cplx z(double s) const;   // position at parameter s in [0,1]
  cplx dz(double s) const;  // velocity
};

using OdeRhs = std::function<Mat(cplx z, const Mat& Y)>;

// Integrates dY/dz = rhs(z, Y) along the concatenated segments with an
// adaptive 8th-order Runge-Kutta scheme. Throws IntegratorFailure when the
// step control cannot meet the tolerances.
Mat integrate_path(const OdeRhs& rhs, Mat Y0,
                   const std::vector<PathSegment>& path, const OdeOptions& opt);

}  // namespace monodromy
