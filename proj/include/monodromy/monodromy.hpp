#pragma once

#include "monodromy/frames.hpp"
#include "monodromy/gauge.hpp"

namespace monodromy {

struct MonodromyOptions {
  OdeOptions ode;
  SeedOptions seed;
  double match_radius = 1.0;  // |z| where frames are compared
  double tri_tol = 1e-6;      // structural tolerance for the Stokes matrices
};

struct MonodromyData {
  Mat x;
  Mat C;        // connection matrix: F_inf = F_0 * C
  Mat S_plus;   // F_0 (continued counterclockwise) = F_l * S_plus * e^{2 pi i delta(x)}
  Mat S_minus;  // F_l (continued counterclockwise) = F_0 * S_minus
  Mat delta_x;  // diagonal part of x
  SectorLayout layout;
};

// C = F_0(z_m)^{-1} F_inf(z_m) at the matching point z_m on the bisector of
// the initial sector, |z_m| = match_radius.
Mat connection_matrix(const IrregularConnection& conn, const SectorLayout& lay,
                      const MonodromyOptions& opt);

// (S_plus, S_minus). Continuations are counterclockwise; unipotent upper/lower
// triangularity with respect to the induced ordering is verified to tri_tol
// (TriangularityViolation otherwise).
std::pair<Mat, Mat> stokes_matrices(const IrregularConnection& conn,
                                    const SectorLayout& lay,
                                    const MonodromyOptions& opt);

// All monodromy data with shared series/transport work.
MonodromyData monodromy_data(const IrregularConnection& conn,
                             const SectorLayout& lay,
                             const MonodromyOptions& opt);

// Residual of the monodromy identity
//   C e^{2 pi i x} C^{-1} = S_minus S_plus e^{2 pi i delta(x)}
// in the max norm. (For diagonal x all factors collapse and the residual is 0.)
double monodromy_relation_residual(const MonodromyData& md);

// Point of the dual Poisson group: b_minus lower triangular, b_plus upper
// triangular (with respect to the induced ordering), Lambda in the Cartan with
// diag(b_minus) = e^{-pi i Lambda}, diag(b_plus) = e^{pi i Lambda}.
struct GStarTriple {
  Mat b_minus, b_plus, Lambda;
};

// Structural defect of a triple (triangularity and diagonal compatibility).
double gstar_membership_residual(const LieContext& ctx, const Ordering& ord,
                                 const GStarTriple& t);

// Stokes map at x:
//   b_minus = e^{-pi i delta(x)} S_minus^{-1},
//   b_plus  = e^{-pi i delta(x)} S_plus e^{2 pi i delta(x)},
//   Lambda  = delta(x).
// Throws MembershipViolation when the result fails the structural check.
GStarTriple stokes_map(const IrregularConnection& conn, const SectorLayout& lay,
                       const MonodromyOptions& opt, double member_tol = 1e-6);

// The map x -> C(x / (2 pi i)) as a differentiable G-valued map with a
// memoized evaluator (thread-safe).
GValuedMap c2pii_field(const LieContext& ctx, const Mat& A0,
                       const SectorLayout& lay, const MonodromyOptions& opt);

}  // namespace monodromy
