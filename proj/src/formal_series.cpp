#include "monodromy/formal_series.hpp"

#include <Eigen/SVD>

#include "monodromy/errors.hpp"

namespace monodromy {

IrregularConnection::IrregularConnection(const LieContext& c, const Mat& A0_in,
                                         const Mat& x_in, double reg_margin)
    : ctx(&c), A0(A0_in), x(x_in) {
  const int n = c.n();
  if (A0.rows() != n || A0.cols() != n || x.rows() != n || x.cols() != n)
    throw ConfigError("IrregularConnection: size mismatch with the Lie context");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && std::abs(A0(i, j)) > 0)
        throw DegenerateA0("IrregularConnection: A0 must be diagonal");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(A0(i, i) - A0(j, j)) < reg_margin)
        throw DegenerateA0("IrregularConnection: A0 not regular at the margin");
}

Mat FormalSeries::eval(cplx w, int K) const {
  const int top = std::min<int>(K, order());
  Mat out = coeffs[0];
  cplx p{1.0, 0.0};
  for (int k = 1; k <= top; ++k) {
    p *= w;
    out += coeffs[k] * p;
  }
  return out;
}

namespace {

// Right side of the pole recursion at order k.
Mat pole_rhs(const IrregularConnection& conn, const Mat& Hkm1, int k) {
  Mat dx = Hkm1 * conn.x.diagonal().asDiagonal().toDenseMatrix();
  return double(k - 1) * Hkm1 - conn.x * Hkm1 + dx;
}

}  // namespace

FormalSeries formal_H_series(const IrregularConnection& conn, int N) {
  const int n = conn.ctx->n();
  FormalSeries s;
  s.coeffs.reserve(N + 1);
  s.coeffs.push_back(Mat::Identity(n, n));
  for (int k = 1; k <= N; ++k) {
    Mat rhs = pole_rhs(conn, s.coeffs[k - 1], k);
    Mat Hk = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) Hk(i, j) = rhs(i, j) / (conn.A0(i, i) - conn.A0(j, j));
    // Diagonal fixed by solvability at order k+1: k * diag(H_k) = diag(x * O_k).
    Mat xO = conn.x * Hk;
    for (int i = 0; i < n; ++i) Hk(i, i) = xO(i, i) / double(k);
    s.coeffs.push_back(Hk);
  }
  return s;
}

double h_series_recursion_residual(const IrregularConnection& conn,
                                   const FormalSeries& s, int k) {
  Mat lhs = conn.A0 * s.coeffs[k] - s.coeffs[k] * conn.A0;
  Mat off = pole_rhs(conn, s.coeffs[k - 1], k);
  // The diagonal of the commutator vanishes identically; compare off-diagonal.
  for (int i = 0; i < conn.ctx->n(); ++i) off(i, i) = 0.0;
  return (lhs - off).cwiseAbs().maxCoeff();
}

FormalSeries frobenius_Hinf(const IrregularConnection& conn, int K,
                            double margin) {
  const LieContext& ctx = *conn.ctx;
  const int n = ctx.n(), dim = ctx.dim();
  Mat adx = ctx.ad(conn.x);
  FormalSeries s;
  s.coeffs.reserve(K + 1);
  s.coeffs.push_back(Mat::Identity(n, n));
  for (int k = 1; k <= K; ++k) {
    Mat op = double(k) * Mat::Identity(dim, dim) + adx;
    Eigen::JacobiSVD<Mat> svd(op, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues()(dim - 1) < margin)
      throw Resonant("frobenius_Hinf: k + ad_x nearly singular");
    Vec rhs = ctx.flatten(Mat(-conn.A0 * s.coeffs[k - 1]));
    s.coeffs.push_back(ctx.unflatten(svd.solve(rhs)));
  }
  return s;
}

double hinf_recursion_residual(const IrregularConnection& conn,
                               const FormalSeries& s, int k) {
  Mat lhs = double(k) * s.coeffs[k] + conn.x * s.coeffs[k] - s.coeffs[k] * conn.x;
  Mat rhs = -conn.A0 * s.coeffs[k - 1];
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace monodromy
