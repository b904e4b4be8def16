#include "monodromy/forms.hpp"

namespace monodromy {

namespace {

cplx tr(const Mat& M) { return M.trace(); }

// (a,b)(v1,v2) = <a(v1), b(v2)> - <a(v2), b(v1)> for g-valued 1-forms given by
// their values on the two tangents.
cplx form_pair(const Mat& a1, const Mat& a2, const Mat& b1, const Mat& b2) {
  return tr(a1 * b2) - tr(a2 * b1);
}

Mat diag_exp(const Mat& lam, cplx scale) {
  Mat out = Mat::Zero(lam.rows(), lam.cols());
  for (int i = 0; i < lam.rows(); ++i) out(i, i) = std::exp(scale * lam(i, i));
  return out;
}

// Values and tangent derivatives of the partial products D_j = d_j ... d_1 C.
void partial_products(const Mat& C, const std::vector<Mat>& f, const Mat& dC,
                      const std::vector<Mat>& df, std::vector<Mat>& P,
                      std::vector<Mat>& dP) {
  P.assign(1, C);
  dP.assign(1, dC);
  for (size_t j = 0; j < f.size(); ++j) {
    dP.push_back(df[j] * P.back() + f[j] * dP.back());
    P.push_back(f[j] * P.back());
  }
}

}  // namespace

cplx omega_sigma(const LieContext& ctx, const Mat& lambda, const Mat& X1,
                 const Mat& R1, const Mat& X2, const Mat& R2) {
  (void)ctx;
  // The closed (exact) symplectic form on the slice: the bracket term enters
  // with the opposite sign to the residue terms.
  return tr(R1 * X2) - tr(R2 * X1) - tr(lambda * (X1 * X2 - X2 * X1));
}

cplx omega_extended_orbit(const LieContext& ctx, const Mat& g0,
                          const std::vector<Mat>& A, const OrbitTangent& v1,
                          const OrbitTangent& v2) {
  (void)ctx;
  const size_t k = A.size();
  if (k < 1 || k > 2 || v1.X.size() != k || v2.X.size() != k)
    throw Error("omega_extended_orbit: only k in {1,2} jets are supported");
  Mat g0inv = g0.partialPivLu().inverse();
  // <R, Ad_{g0} X> pairs the residue R with the constant jet term.
  cplx out = tr(v1.R * g0 * v2.X[0] * g0inv) - tr(v2.R * g0 * v1.X[0] * g0inv);
  // <A, [X1, X2]> with the residue pairing: A_j against [X1,X2]_{j-1}.
  for (size_t j = 0; j < k; ++j) {
    Mat br = Mat::Zero(g0.rows(), g0.cols());
    for (size_t p = 0; p <= j; ++p) {
      const Mat &a = v1.X[p], &b = v2.X[j - p];
      br += a * b - b * a;
    }
    out += tr(A[j] * br);
  }
  return out;
}

int ctilde_k(const CtildePoint& p) {
  if (p.d.size() != p.e.size()) throw Error("ctilde point: mismatched factors");
  return static_cast<int>(p.d.size()) + 1;
}

CtildePoint ctilde_k1(const Mat& h, const Mat& lambda, bool flip) {
  cplx s = flip ? kPi * kI : -kPi * kI;
  CtildePoint p;
  p.C = h;
  p.d = {diag_exp(lambda, s)};
  p.e = {diag_exp(lambda, -s)};
  p.lambda = lambda;
  return p;
}

CtildeTangent ctilde_k1_tangent(const Mat& lambda, const Mat& dh,
                                const Mat& dlambda, bool flip) {
  cplx s = flip ? kPi * kI : -kPi * kI;
  CtildeTangent v;
  v.dC = dh;
  v.dd = {Mat(s * dlambda * diag_exp(lambda, s).diagonal().asDiagonal())};
  v.de = {Mat(-s * dlambda * diag_exp(lambda, -s).diagonal().asDiagonal())};
  v.dlambda = dlambda;
  return v;
}

Mat qh_moment(const CtildePoint& p) {
  // C^{-1} d_1^{-1} ... d_{k-1}^{-1} e_{k-1} ... e_1 C.
  Mat Cinv = p.C.partialPivLu().inverse();
  Mat out = Cinv;
  for (const Mat& d : p.d) out = out * d.partialPivLu().inverse();
  for (auto it = p.e.rbegin(); it != p.e.rend(); ++it) out = out * (*it);
  return out * p.C;
}

Mat qh_moment_derivative(const CtildePoint& p, const CtildeTangent& v) {
  // Factor list C^{-1}, d_1^{-1}, ..., d_{k-1}^{-1}, e_{k-1}, ..., e_1, C.
  std::vector<Mat> F, dF;
  Mat Cinv = p.C.partialPivLu().inverse();
  F.push_back(Cinv);
  dF.push_back(Mat(-Cinv * v.dC * Cinv));
  for (size_t j = 0; j < p.d.size(); ++j) {
    Mat di = p.d[j].partialPivLu().inverse();
    F.push_back(di);
    dF.push_back(Mat(-di * v.dd[j] * di));
  }
  for (size_t j = p.e.size(); j-- > 0;) {
    F.push_back(p.e[j]);
    dF.push_back(v.de[j]);
  }
  F.push_back(p.C);
  dF.push_back(v.dC);

  Mat out = Mat::Zero(p.C.rows(), p.C.cols());
  for (size_t i = 0; i < F.size(); ++i) {
    Mat term = (i == 0) ? dF[0] : Mat(F[0]);
    if (i != 0) {
      for (size_t j = 1; j < F.size(); ++j) term = term * ((j == i) ? dF[j] : F[j]);
    } else {
      for (size_t j = 1; j < F.size(); ++j) term = term * F[j];
    }
    out += term;
  }
  return out;
}

cplx qh_form_ctilde(const LieContext& ctx, const CtildePoint& p,
                    const CtildeTangent& v1, const CtildeTangent& v2) {
  (void)ctx;
  std::vector<Mat> D1, dD1, D2, dD2, E1, dE1, E2, dE2;
  partial_products(p.C, p.d, v1.dC, v1.dd, D1, dD1);
  partial_products(p.C, p.d, v2.dC, v2.dd, D2, dD2);
  partial_products(p.C, p.e, v1.dC, v1.de, E1, dE1);
  partial_products(p.C, p.e, v2.dC, v2.de, E2, dE2);
  const size_t m = p.d.size();  // k - 1

  auto ltheta = [](const Mat& G, const Mat& dG) {
    return Mat(G.partialPivLu().solve(dG));  // G^{-1} dG
  };
  auto rtheta = [](const Mat& G, const Mat& dG) {
    return Mat(dG * G.partialPivLu().inverse());  // dG G^{-1}
  };

  cplx out = 0.5 * form_pair(rtheta(D1[m], dD1[m]), rtheta(D2[m], dD2[m]),
                             rtheta(E1[m], dE1[m]), rtheta(E2[m], dE2[m]));
  for (size_t j = 1; j <= m; ++j) {
    out += 0.5 * form_pair(ltheta(D1[j], dD1[j]), ltheta(D2[j], dD2[j]),
                           ltheta(D1[j - 1], dD1[j - 1]), ltheta(D2[j - 1], dD2[j - 1]));
    out -= 0.5 * form_pair(ltheta(E1[j], dE1[j]), ltheta(E2[j], dE2[j]),
                           ltheta(E1[j - 1], dE1[j - 1]), ltheta(E2[j - 1], dE2[j - 1]));
  }
  return out;
}

cplx qh_form_Ctilde(const LieContext& ctx, int k, const CtildePoint& p,
                    const CtildeTangent& v1, const CtildeTangent& v2,
                    double tol) {
  if (k != ctilde_k(p) && !(k == 1 && ctilde_k(p) == 2))
    throw Error("qh_form_Ctilde: k does not match the point");
  if (k < 1 || k > 2) throw Error("qh_form_Ctilde: only k in {1,2} supported");
  const Ordering& ord = ctx.ordering();
  const int n = ctx.n();
  double defect = 0.0;
  const int km1 = static_cast<int>(p.d.size());
  for (int j = 0; j < km1; ++j) {
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        if (i == l) continue;
        if (ord.is_positive(i, l))
          defect = std::max(defect, std::abs(p.d[j](i, l)));  // d lower
        else
          defect = std::max(defect, std::abs(p.e[j](i, l)));  // e upper
      }
    for (int i = 0; i < n; ++i) {
      cplx w = std::exp(kPi * kI * p.lambda(i, i) / double(km1));
      defect = std::max(defect, std::abs(1.0 / p.d[j](i, i) - w));
      defect = std::max(defect, std::abs(p.e[j](i, i) - w));
    }
  }
  if (defect > tol)
    throw ConstraintViolation("qh_form_Ctilde: point violates the structure constraints");
  return qh_form_ctilde(ctx, p, v1, v2);
}

cplx fusion_form(const LieContext& ctx, const CtildePoint& p1,
                 const CtildeTangent& v1a, const CtildeTangent& v1b,
                 const CtildePoint& p2, const CtildeTangent& v2a,
                 const CtildeTangent& v2b) {
  cplx out = qh_form_ctilde(ctx, p1, v1a, v1b) + qh_form_ctilde(ctx, p2, v2a, v2b);
  Mat mu1 = qh_moment(p1), mu2 = qh_moment(p2);
  Mat mu1inv = mu1.partialPivLu().inverse(), mu2inv = mu2.partialPivLu().inverse();
  Mat ta = mu1inv * qh_moment_derivative(p1, v1a);  // mu1* theta
  Mat tb = mu1inv * qh_moment_derivative(p1, v1b);
  Mat sa = qh_moment_derivative(p2, v2a) * mu2inv;  // mu2* thetabar
  Mat sb = qh_moment_derivative(p2, v2b) * mu2inv;
  out -= 0.5 * form_pair(ta, tb, sa, sb);
  return out;
}

Mat fusion_moment(const CtildePoint& p1, const CtildePoint& p2) {
  return qh_moment(p1) * qh_moment(p2);
}

}  // namespace monodromy
