#include "monodromy/lie_context.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace monodromy {

Ordering Ordering::standard(int n) {
  Ordering o;
  o.n = n;
  o.position.resize(n);
  for (int i = 0; i < n; ++i) o.position[i] = i;
  return o;
}

std::vector<std::pair<int, int>> Ordering::positive_roots() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && is_positive(i, j)) out.emplace_back(i, j);
  return out;
}

LieContext::LieContext(int n, Ordering ordering) : m_n(n), m_ordering(std::move(ordering)) {
  if (m_ordering.n == 0) m_ordering = Ordering::standard(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m_roots.emplace_back(i, j);
}

Mat LieContext::basis(int a) const {
  Mat E = Mat::Zero(m_n, m_n);
  auto [i, j] = unidx(a);
  E(i, j) = 1.0;
  return E;
}

Vec LieContext::flatten(const Mat& M) const {
  Vec v(dim());
  for (int i = 0; i < m_n; ++i)
    for (int j = 0; j < m_n; ++j) v(idx(i, j)) = M(i, j);
  return v;
}

Mat LieContext::unflatten(const Vec& v) const {
  Mat M(m_n, m_n);
  for (int i = 0; i < m_n; ++i)
    for (int j = 0; j < m_n; ++j) M(i, j) = v(idx(i, j));
  return M;
}

int LieContext::dual_index(int a) const {
  auto [i, j] = unidx(a);
  return idx(j, i);
}

Mat LieContext::ad(const Mat& X) const {
  Mat op(dim(), dim());
  for (int a = 0; a < dim(); ++a) op.col(a) = flatten(X * basis(a) - basis(a) * X);
  return op;
}

Mat LieContext::Ad(const Mat& h) const {
  Mat hinv = h.inverse();
  Mat op(dim(), dim());
  for (int a = 0; a < dim(); ++a) op.col(a) = flatten(h * basis(a) * hinv);
  return op;
}

Mat LieContext::left_mult(const Mat& h) const {
  Mat op(dim(), dim());
  for (int a = 0; a < dim(); ++a) op.col(a) = flatten(h * basis(a));
  return op;
}

Mat LieContext::right_mult(const Mat& h) const {
  Mat op(dim(), dim());
  for (int a = 0; a < dim(); ++a) op.col(a) = flatten(basis(a) * h);
  return op;
}

Mat delta_projection(const Mat& X) {
  return X.diagonal().asDiagonal();
}

Mat principal_log(const Mat& M, double cut_margin) {
  Eigen::ComplexEigenSolver<Mat> es(M);
  if (es.info() != Eigen::Success) throw NonDiagonalizable("eigensolver failed in principal_log");
  const Mat& V = es.eigenvectors();
  Eigen::JacobiSVD<Mat> svd(V);
  double cond = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < 1e8)) throw NonDiagonalizable("ill-conditioned eigenvectors in principal_log");
  Vec lam = es.eigenvalues();
  Vec loglam(lam.size());
  for (int i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) < 1e-300) throw LogBranch("zero eigenvalue in principal_log");
    if (lam(i).real() < 0.0 && std::abs(lam(i).imag()) < cut_margin * std::abs(lam(i)))
      throw LogBranch("eigenvalue on the negative-axis branch cut");
    loglam(i) = std::log(lam(i));
  }
  return V * loglam.asDiagonal() * V.inverse();
}

}  // namespace monodromy
