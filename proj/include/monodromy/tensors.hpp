#pragma once

#include <vector>

#include "monodromy/lie_context.hpp"

namespace monodromy {

//------------------------------------------------------------------------------
// TwoTensor: element of g (x) g, stored as the coefficient matrix m with
// T = sum_{a,b} m(a,b) e_a (x) e_b over the flat elementary basis.
//------------------------------------------------------------------------------
struct TwoTensor {
  int n = 0;
  Mat m;  // (n^2) x (n^2)

  TwoTensor() = default;
  explicit TwoTensor(int n_) : n(n_), m(Mat::Zero(n_ * n_, n_ * n_)) {}

  TwoTensor flip() const { TwoTensor t(n); t.m = m.transpose(); return t; }
  // Apply operators to the slots: (P (x) Q)(T).
  TwoTensor apply(const Mat& P, const Mat& Q) const {
    TwoTensor t(n);
    t.m = P * m * Q.transpose();
    return t;
  }
  double norm_inf() const { return m.cwiseAbs().maxCoeff(); }
  double norm_fro() const { return m.norm(); }

  TwoTensor operator+(const TwoTensor& o) const { TwoTensor t(n); t.m = m + o.m; return t; }
  TwoTensor operator-(const TwoTensor& o) const { TwoTensor t(n); t.m = m - o.m; return t; }
  TwoTensor operator*(cplx s) const { TwoTensor t(n); t.m = s * m; return t; }

  // Contract the first slot with y in g* (trace form): (y (x) id)(T) in g.
  Mat contract_first(const LieContext& ctx, const Mat& y) const;
};

// Casimir t = sum_{ij} e_ij (x) e_ji (the element of S^2(g)^g attached to the
// trace form).
TwoTensor casimir(const LieContext& ctx);

// r = t/2 + (1/2) sum_{alpha in Phi+} E_alpha ^ E_-alpha for the positive
// system held by ctx, with a ^ b := a(x)b - b(x)a.
TwoTensor standard_r(const LieContext& ctx);

// Antisymmetric part r_0 = (r - r^{2,1})/2.
TwoTensor skew_part(const TwoTensor& r);

// Wedge of two Lie algebra elements: X ^ Y = X(x)Y - Y(x)X.
TwoTensor wedge(const LieContext& ctx, const Mat& X, const Mat& Y);

//------------------------------------------------------------------------------
// ThreeTensor: element of g (x) g (x) g, dense coefficient array over ordered
// triples of flat basis indices.
//------------------------------------------------------------------------------
struct ThreeTensor {
  int n = 0;
  int d = 0;  // n^2
  std::vector<cplx> v;  // size d^3, index (a*d + b)*d + c

  ThreeTensor() = default;
  explicit ThreeTensor(int n_) : n(n_), d(n_ * n_), v(static_cast<size_t>(d) * d * d, cplx{0, 0}) {}

  cplx& at(int a, int b, int c) { return v[(static_cast<size_t>(a) * d + b) * d + c]; }
  cplx at(int a, int b, int c) const { return v[(static_cast<size_t>(a) * d + b) * d + c]; }

  double norm_inf() const;
  ThreeTensor operator+(const ThreeTensor& o) const;
  ThreeTensor operator-(const ThreeTensor& o) const;
  ThreeTensor operator*(cplx s) const;

  // Full antisymmetrization: sum over the six signed slot permutations, with no
  // 1/3! normalization (documented convention).
  ThreeTensor alt() const;
};

// The three bracket insertions [T^{12}, S^{13}], [T^{12}, S^{23}], [T^{13}, S^{23}]
// for T, S in g(x)g.
ThreeTensor bracket_12_13(const LieContext& ctx, const TwoTensor& T, const TwoTensor& S);
ThreeTensor bracket_12_23(const LieContext& ctx, const TwoTensor& T, const TwoTensor& S);
ThreeTensor bracket_13_23(const LieContext& ctx, const TwoTensor& T, const TwoTensor& S);

// CYBE combination [r12,r13] + [r12,r23] + [r13,r23].
ThreeTensor cybe_lhs(const LieContext& ctx, const TwoTensor& r);

// Place a TwoTensor in two slots of a ThreeTensor with a basis element in the
// remaining slot: used to build sum_a e_a (x) T_a type terms. slot is the slot
// (0,1,2) receiving the basis vector with flat index a.
void add_slotted(ThreeTensor& out, int slot, int a, const TwoTensor& T, cplx scale = 1.0);

}  // namespace monodromy
