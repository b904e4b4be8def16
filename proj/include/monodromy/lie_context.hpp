#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "monodromy/errors.hpp"

namespace monodromy {

using cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using Vec  = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};
inline const cplx kTwoPiI{0.0, 2.0 * kPi};

//------------------------------------------------------------------------------
// Ordering: a positive system for the type-A root system on n indices.
// Root (i,j), i != j, is the functional L -> L_ii - L_jj. A positive system is
// induced by a total order "prec" on the indices: (i,j) positive iff i precedes j.
//------------------------------------------------------------------------------
struct Ordering {
  int n = 0;
  // position[i] = rank of index i; root (i,j) is positive iff position[i] < position[j].
  std::vector<int> position;

  static Ordering standard(int n);
  bool is_positive(int i, int j) const { return position[i] < position[j]; }
  std::vector<std::pair<int, int>> positive_roots() const;
};

//------------------------------------------------------------------------------
// LieContext: gl_n(C) with the trace form <X,Y> = tr(XY), the elementary-matrix
// basis e_ij (flat index i*n+j), the diagonal Cartan subalgebra, the roots, and
// a chosen positive system.
//------------------------------------------------------------------------------
class LieContext {
 public:
  explicit LieContext(int n, Ordering ordering = Ordering{});

  int n() const { return m_n; }
  int dim() const { return m_n * m_n; }
  const Ordering& ordering() const { return m_ordering; }

  // Flat basis index of e_ij.
  int idx(int i, int j) const { return i * m_n + j; }
  std::pair<int, int> unidx(int a) const { return {a / m_n, a % m_n}; }
  Mat basis(int a) const;

  // Trace form and the induced identification g ~ g*.
  static cplx pairing(const Mat& X, const Mat& Y) { return (X * Y).trace(); }

  // Flatten M = sum_a coeff_a e_a into the coefficient vector (coeff of e_ij is
  // the entry M(i,j)) and back.
  Vec flatten(const Mat& M) const;
  Mat unflatten(const Vec& v) const;

  // dual_index(a) is the flat index of the trace-form dual of e_a: the dual of
  // e_ij is e_ji.
  int dual_index(int a) const;

  // Matrix (dim x dim) of the operator Y -> [X, Y] in the elementary basis.
  Mat ad(const Mat& X) const;
  // Matrix of Y -> h Y h^{-1}.
  Mat Ad(const Mat& h) const;
  // Matrix of Y -> h Y  (resp. Y -> Y h).
  Mat left_mult(const Mat& h) const;
  Mat right_mult(const Mat& h) const;

  // All roots as ordered index pairs (i,j), i != j.
  const std::vector<std::pair<int, int>>& roots() const { return m_roots; }

 private:
  int m_n;
  Ordering m_ordering;
  std::vector<std::pair<int, int>> m_roots;
};

// Diagonal part of X (projection onto the Cartan subalgebra along root spaces).
Mat delta_projection(const Mat& X);

// Principal matrix logarithm via eigendecomposition; throws LogBranch when an
// eigenvalue sits within `cut_margin` of the negative real axis and
// NonDiagonalizable when the eigenvector matrix is ill-conditioned.
Mat principal_log(const Mat& M, double cut_margin = 1e-10);

}  // namespace monodromy
