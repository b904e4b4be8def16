#include "monodromy/scalar_ad.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace monodromy {

namespace {

double condition_number(const Mat& V) {
  Eigen::JacobiSVD<Mat> svd(V);
  const auto& s = svd.singularValues();
  double smin = s(s.size() - 1);
  if (smin <= 0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace

LinOp scalar_function_of_ad(const LieContext& ctx, const ScalarFn& f, const Mat& X,
                            double cond_threshold) {
  const int n = ctx.n();
  Eigen::ComplexEigenSolver<Mat> es(X);
  bool small_ok = es.info() == Eigen::Success && condition_number(es.eigenvectors()) < cond_threshold;
  LinOp out{&ctx, Mat(ctx.dim(), ctx.dim())};
  if (small_ok) {
    const Mat& V = es.eigenvectors();
    Mat Vinv = V.inverse();
    const Vec& lam = es.eigenvalues();
    // Column a of the operator: V ( f(lambda_i - lambda_j) .* (V^{-1} e_a V) ) V^{-1}
    Mat F(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) F(i, j) = f(lam(i) - lam(j));
    for (int a = 0; a < ctx.dim(); ++a) {
      Mat W = Vinv * ctx.basis(a) * V;
      out.op.col(a) = ctx.flatten(V * W.cwiseProduct(F) * Vinv);
    }
    return out;
  }
  // Fallback: spectral decomposition of ad_X itself.
  Mat adX = ctx.ad(X);
  Eigen::ComplexEigenSolver<Mat> es2(adX);
  if (es2.info() != Eigen::Success || !(condition_number(es2.eigenvectors()) < cond_threshold))
    throw NonDiagonalizable("scalar_function_of_ad: X not diagonalizable within threshold");
  const Mat& W = es2.eigenvectors();
  Vec mu = es2.eigenvalues();
  Vec fmu(mu.size());
  for (int i = 0; i < mu.size(); ++i) fmu(i) = f(mu(i));
  out.op = W * fmu.asDiagonal() * W.inverse();
  return out;
}

LinOp ad_inverse_restricted(const LieContext& ctx, const Mat& X, double null_tol) {
  auto f = [null_tol](cplx z) -> cplx {
    return (std::abs(z) <= null_tol) ? cplx{0, 0} : 1.0 / z;
  };
  return scalar_function_of_ad(ctx, f, X);
}

}  // namespace monodromy
