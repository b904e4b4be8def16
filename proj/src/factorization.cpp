#include "monodromy/factorization.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace monodromy {

namespace {

// Permutation sending position order to flat index order: row k of P picks out
// the index whose rank under the ordering is k, so that P M P^T is triangular
// in the ordinary sense exactly when M is triangular in the ordering sense.
Mat rank_permutation(const Ordering& ord) {
  const int n = ord.n;
  Mat P = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) P(ord.position[i], i) = 1.0;
  return P;
}

struct Ldu {
  Mat L, D, U;  // unit lower, diagonal, unit upper
};

Ldu doolittle(Mat A, double pivot_tol) {
  const int n = static_cast<int>(A.rows());
  Mat L = Mat::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    if (std::abs(A(k, k)) < pivot_tol)
      throw OutsideBigCell("dual_factorize: vanishing leading minor");
    for (int i = k + 1; i < n; ++i) {
      cplx f = A(i, k) / A(k, k);
      L(i, k) = f;
      A.row(i) -= f * A.row(k);
    }
  }
  Ldu out;
  out.L = L;
  out.D = Mat::Zero(n, n);
  out.U = Mat::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    out.D(k, k) = A(k, k);
    for (int j = k + 1; j < n; ++j) out.U(k, j) = A(k, j) / A(k, k);
  }
  return out;
}

Mat diag_pow(const Mat& D, double p, cplx& logdet_unused) {
  (void)logdet_unused;
  Mat out = Mat::Zero(D.rows(), D.cols());
  for (int k = 0; k < D.rows(); ++k)
    out(k, k) = std::exp(p * std::log(D(k, k)));
  return out;
}

}  // namespace

GStarTriple dual_factorize(const LieContext& ctx, const Mat& M,
                           double pivot_tol) {
  Mat P = rank_permutation(ctx.ordering());
  Ldu f = doolittle(P * M * P.transpose(), pivot_tol);
  cplx dummy;
  Mat Dh = diag_pow(f.D, 0.5, dummy);    // e^{(1/2) log d_k}
  Mat Dmh = diag_pow(f.D, -0.5, dummy);
  GStarTriple t;
  t.b_minus = P.transpose() * Mat(Dmh * f.L.inverse()) * P;
  t.b_plus = P.transpose() * Mat(Dh * f.U) * P;
  Mat Lam = Mat::Zero(M.rows(), M.cols());
  for (int k = 0; k < M.rows(); ++k) Lam(k, k) = std::log(f.D(k, k)) / kTwoPiI;
  t.Lambda = P.transpose() * Lam * P;
  return t;
}

GStarTriple conjugate_factorize(const LieContext& ctx, const Mat& M,
                                double pivot_tol) {
  Mat P = rank_permutation(ctx.ordering());
  Ldu f = doolittle(P * M * P.transpose(), pivot_tol);
  cplx dummy;
  Mat Dh = diag_pow(f.D, 0.5, dummy);
  Mat Dmh = diag_pow(f.D, -0.5, dummy);
  GStarTriple t;
  t.b_minus = P.transpose() * Mat(f.L * Dh) * P;
  t.b_plus = P.transpose() * Mat(f.U.inverse() * Dmh) * P;
  Mat Lam = Mat::Zero(M.rows(), M.cols());
  for (int k = 0; k < M.rows(); ++k) Lam(k, k) = -std::log(f.D(k, k)) / kTwoPiI;
  t.Lambda = P.transpose() * Lam * P;
  return t;
}

GStarTriple map_I(const LieContext& ctx, const Mat& x) {
  return dual_factorize(ctx, x.exp());
}

Mat map_I_inverse(const LieContext& ctx, const GStarTriple& t) {
  (void)ctx;
  Mat M = t.b_minus.partialPivLu().solve(t.b_plus);
  return principal_log(M);
}

}  // namespace monodromy
