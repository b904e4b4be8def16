#pragma once

#include <functional>

#include "monodromy/tensors.hpp"

namespace monodromy {

// phi(z) = -1/z + (1/2) coth(z/2), odd, with the removable singularity at 0
// filled in. Poles at 2 pi i k, k != 0: approaching one within `guard` throws
// PoleHit. Small |z| uses the Taylor series, large |z| the closed form; the two
// agree at the crossover radius to 1e-13.
cplx phi(cplx z, double guard = 1e-6);

// Even companion (1/2) z coth(z/2), value 1 at z = 0 (same pole set and guard).
cplx half_z_coth_half_z(cplx z, double guard = 1e-6);

// Dynamical r-matrix field: a map x -> TwoTensor with a domain guard.
struct DynamicalRMatrix {
  const LieContext* ctx = nullptr;
  std::function<TwoTensor(const Mat&)> eval;
};

// r_am(x) = (id (x) phi(ad_{x_vee}))(t) where x_vee = (x (x) id)(t) = x under
// the trace form. Rejects x whose ad-eigenvalue differences are within `guard`
// of 2 pi i Z \ {0}.
TwoTensor r_am(const LieContext& ctx, const Mat& x, double guard = 1e-6);
DynamicalRMatrix r_am_field(const LieContext& ctx);

// Left side of the dynamical Yang-Baxter equation for a field r at x:
// Alt(dr) + [r12,r13] + [r12,r23] + [r13,r23], with dr by central differences
// (step h * max(1, |x|), one Richardson level).
ThreeTensor cdybe_residual(const DynamicalRMatrix& r, const Mat& x, double h);

}  // namespace monodromy
