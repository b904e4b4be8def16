#pragma once

#include "monodromy/factorization.hpp"
#include "monodromy/forms.hpp"
#include "monodromy/poisson_tensors.hpp"

namespace monodromy {

struct SigmaPoint {
  Mat h, lambda;  // lambda diagonal, in the regular torus slice
};
struct SigmaPrimePoint {
  Mat h, lambda;  // slice chart G x t'
};

// (g1, x1, g2, -x1) -> (g2 g1^{-1}, -Ad_{g1} x1). Requires Ad_{g1} x1 diagonal
// and regular (ConstraintViolation otherwise).
SigmaPoint reduction_orbit_iota(const LieContext& ctx, const Mat& g1,
                                const Mat& x1, const Mat& g2,
                                double margin = 1e-6, double diag_tol = 1e-9);

// The Hamiltonian-reduction pullback identity evaluated on the constrained
// tangent family v_i = (0, Ad_{g1^{-1}} R_i, Ad_{g2^{-1}} X_i, -Ad_{g1^{-1}} R_i):
//   upstairs  = omega_{O1} + omega_{O2} on the zero-level tangents,
//   downstairs = omega_sigma at the reduced point on the pushed tangents,
//   display   = <R2, Ad_{g1 g2^{-1}} X1> - <R1, Ad_{g1 g2^{-1}} X2>
//               + <x1, Ad_{g2^{-1}}[X1, X2]>
// (the bracket-term sign is forced by closedness of the slice form; see the
// comment in omega_sigma).
// A0 is the regular leading coefficient fixing the second (order-two) orbit.
struct OrbitPullbackValues {
  cplx upstairs, downstairs, display;
};
OrbitPullbackValues reduction_orbit_pullback(const LieContext& ctx, const Mat& A0,
                                      const Mat& g1, const Mat& x1,
                                      const Mat& g2, const Mat& X1,
                                      const Mat& R1, const Mat& X2,
                                      const Mat& R2);

// Quasi-Hamiltonian reduction of the monodromy-data fusion: checks the unit
// moment constraint e^{2 pi i Ad_{h^{-1}} lambda} = C b_-^{-1} b_+ C^{-1} to
// `tol` and returns the displayed image with frame u = b_+^{-1} C h^{-1}
// e^{pi i lambda}.
struct ReducedMonodromyPoint {
  Mat g1;        // C h^{-1}
  Mat lambda;    // exponent of the first-pole factor e^{-2 pi i lambda}
  Mat u;         // frame component
  GStarTriple triple;
};
ReducedMonodromyPoint reduction_monodromy(const LieContext& ctx, const Mat& h,
                                          const Mat& lambda, const Mat& C,
                                          const GStarTriple& triple,
                                          double tol = 1e-8);

// Two-sided evaluation of the reduced 2-form at a constrained point of the
// fusion (parametrized by (h, lambda, C), the triple being derived from the
// unit-moment constraint): `upstairs` is the fusion form on the lifted
// tangents, `downstairs` the chart 2-form scale * (pi_r)^{-1} at the image
// point (C h^{-1}, 2 pi i lambda) on the pushed tangents.  With the
// lambda' = -log(torus factor) chart convention the calibrated scale is
// exactly 1.
struct FormAgreementValues {
  cplx upstairs, downstairs;
};
FormAgreementValues reduction_monodromy_form_agreement(
    const LieContext& ctx, const Mat& h, const Mat& lambda, const Mat& C,
    const Mat& dh1, const Mat& dlam1, const Mat& dC1, const Mat& dh2,
    const Mat& dlam2, const Mat& dC2, cplx scale = cplx{1.0, 0.0},
    double fd_step = 1e-5);

}  // namespace monodromy
