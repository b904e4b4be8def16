#include "monodromy/monodromy.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <unsupported/Eigen/MatrixFunctions>

#include "monodromy/errors.hpp"

namespace monodromy {

namespace {

Mat diag_exp(const Mat& d, cplx scale) {
  Mat out = Mat::Zero(d.rows(), d.cols());
  for (int i = 0; i < d.rows(); ++i) out(i, i) = std::exp(scale * d(i, i));
  return out;
}

// Entries of S - I that must vanish for membership in the unipotent group of
// the positive (sign=+1) or negative (sign=-1) roots.
double unipotent_defect(const Ordering& ord, const Mat& S, int sign) {
  double defect = 0.0;
  const int n = static_cast<int>(S.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        defect = std::max(defect, std::abs(S(i, i) - 1.0));
        continue;
      }
      bool allowed = (sign > 0) ? ord.is_positive(i, j) : ord.is_positive(j, i);
      if (!allowed) defect = std::max(defect, std::abs(S(i, j)));
    }
  return defect;
}

}  // namespace

MonodromyData monodromy_data(const IrregularConnection& conn,
                             const SectorLayout& lay,
                             const MonodromyOptions& opt) {
  const double th_b = lay.bisector();
  const double th_l = lay.opposite_bisector();
  const double r_m = opt.match_radius;

  FormalSeries s = formal_H_series(conn, opt.seed.max_order);

  // Frames at the matching point z_m = r_m e^{i th_b}.
  Mat H0 = canonical_H(conn, s, th_b, r_m, th_b, opt.ode, opt.seed);
  Mat F0 = frame_from_H(conn, H0, r_m, th_b);

  FormalSeries G = frobenius_Hinf(conn, 60);
  Mat Hinf = hinf_value(conn, G, r_m, th_b, opt.ode);
  cplx L(std::log(r_m), th_b);
  Mat Finf = Hinf * Mat(conn.x * L).exp();

  Eigen::PartialPivLU<Mat> F0lu(F0);
  MonodromyData md;
  md.x = conn.x;
  md.delta_x = conn.x.diagonal().asDiagonal();
  md.layout = lay;
  md.C = F0lu.solve(Finf);

  // S_minus: the opposite-sector frame continued counterclockwise into Sect_0.
  Mat Hl_cont = canonical_H(conn, s, th_l, r_m, th_b, opt.ode, opt.seed);
  Mat Fl_cont = frame_from_H(conn, Hl_cont, r_m, th_b);
  md.S_minus = F0lu.solve(Fl_cont);

  // S_plus: the initial frame continued counterclockwise into Sect_l (across
  // the branch cut), compared against the opposite-sector frame on its home
  // branch; the extra formal monodromy factor is divided out.
  Mat H0_cont = canonical_H(conn, s, th_b, r_m, th_b + kPi, opt.ode, opt.seed);
  Mat F0_cont = frame_from_H(conn, H0_cont, r_m, th_b + kPi);
  Mat Hl = canonical_H(conn, s, th_l, r_m, th_l, opt.ode, opt.seed);
  Mat Fl = frame_from_H(conn, Hl, r_m, th_l);
  md.S_plus = Eigen::PartialPivLU<Mat>(Fl).solve(F0_cont) *
              diag_exp(md.delta_x, -kTwoPiI);

  if (unipotent_defect(lay.ordering, md.S_plus, +1) > opt.tri_tol ||
      unipotent_defect(lay.ordering, md.S_minus, -1) > opt.tri_tol)
    throw TriangularityViolation(
        "monodromy_data: Stokes matrices fail the unipotent structure check");

  return md;
}

Mat connection_matrix(const IrregularConnection& conn, const SectorLayout& lay,
                      const MonodromyOptions& opt) {
  const double th_b = lay.bisector();
  const double r_m = opt.match_radius;
  FormalSeries s = formal_H_series(conn, opt.seed.max_order);
  Mat H0 = canonical_H(conn, s, th_b, r_m, th_b, opt.ode, opt.seed);
  Mat F0 = frame_from_H(conn, H0, r_m, th_b);
  FormalSeries G = frobenius_Hinf(conn, 60);
  Mat Hinf = hinf_value(conn, G, r_m, th_b, opt.ode);
  cplx L(std::log(r_m), th_b);
  Mat Finf = Hinf * Mat(conn.x * L).exp();
  return Eigen::PartialPivLU<Mat>(F0).solve(Finf);
}

std::pair<Mat, Mat> stokes_matrices(const IrregularConnection& conn,
                                    const SectorLayout& lay,
                                    const MonodromyOptions& opt) {
  MonodromyData md = monodromy_data(conn, lay, opt);
  return {md.S_plus, md.S_minus};
}

double monodromy_relation_residual(const MonodromyData& md) {
  Mat M0 = md.C * Mat(md.x * kTwoPiI).exp() *
           Eigen::PartialPivLU<Mat>(md.C).inverse();
  Mat rhs = md.S_minus * md.S_plus * diag_exp(md.delta_x, kTwoPiI);
  return (M0 - rhs).cwiseAbs().maxCoeff();
}

double gstar_membership_residual(const LieContext& ctx, const Ordering& ord,
                                 const GStarTriple& t) {
  (void)ctx;
  const int n = static_cast<int>(t.b_minus.rows());
  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        defect = std::max(defect, std::abs(t.b_minus(i, i) -
                                           std::exp(-kPi * kI * t.Lambda(i, i))));
        defect = std::max(defect, std::abs(t.b_plus(i, i) -
                                           std::exp(kPi * kI * t.Lambda(i, i))));
        continue;
      }
      defect = std::max(defect, std::abs(t.Lambda(i, j)));
      if (ord.is_positive(i, j)) defect = std::max(defect, std::abs(t.b_minus(i, j)));
      if (ord.is_positive(j, i)) defect = std::max(defect, std::abs(t.b_plus(i, j)));
    }
  return defect;
}

GStarTriple stokes_map(const IrregularConnection& conn, const SectorLayout& lay,
                       const MonodromyOptions& opt, double member_tol) {
  MonodromyData md = monodromy_data(conn, lay, opt);
  GStarTriple t;
  t.Lambda = md.delta_x;
  Mat e_minus = diag_exp(md.delta_x, -kPi * kI);
  t.b_minus = e_minus * Eigen::PartialPivLU<Mat>(md.S_minus).inverse();
  t.b_plus = e_minus * md.S_plus * diag_exp(md.delta_x, kTwoPiI);
  if (gstar_membership_residual(*conn.ctx, lay.ordering, t) > member_tol)
    throw MembershipViolation("stokes_map: result fails the dual-group check");
  return t;
}

GValuedMap c2pii_field(const LieContext& ctx, const Mat& A0,
                       const SectorLayout& lay, const MonodromyOptions& opt) {
  struct Cache {
    std::mutex mu;
    std::map<std::vector<double>, Mat> values;
  };
  auto cache = std::make_shared<Cache>();
  const LieContext* pctx = &ctx;
  GValuedMap g;
  g.ctx = pctx;
  g.eval = [pctx, A0, lay, opt, cache](const Mat& x) {
    std::vector<double> key;
    key.reserve(2 * x.size());
    for (int j = 0; j < x.cols(); ++j)
      for (int i = 0; i < x.rows(); ++i) {
        key.push_back(x(i, j).real());
        key.push_back(x(i, j).imag());
      }
    {
      std::lock_guard<std::mutex> lock(cache->mu);
      auto it = cache->values.find(key);
      if (it != cache->values.end()) return it->second;
    }
    IrregularConnection conn(*pctx, A0, Mat(x / kTwoPiI));
    Mat C = connection_matrix(conn, lay, opt);
    std::lock_guard<std::mutex> lock(cache->mu);
    cache->values.emplace(key, C);
    return C;
  };
  return g;
}

}  // namespace monodromy
