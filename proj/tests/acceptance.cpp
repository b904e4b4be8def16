// End-to-end acceptance: one pass/fail line per criterion, covering the
// desk-scale verification matrix (gl2 with A0 = diag(1,-1), gl3 with
// A0 = diag(0,1,1+i)). Exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "monodromy/factorization.hpp"
#include "monodromy/groupoid.hpp"
#include "monodromy/rmatrix.hpp"
#include "monodromy/suite.hpp"
#include "monodromy/verifiers.hpp"

using namespace monodromy;

namespace {

int g_failures = 0;

void report(int num, const std::string& label, bool pass,
            const std::string& detail) {
  std::printf("criterion %2d [%s] %s (%s)\n", num, pass ? "PASS" : "FAIL",
              label.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

double now_minus(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ExperimentConfig gl2_config() { return ExperimentConfig{}; }

ExperimentConfig gl3_config() {
  ExperimentConfig cfg;
  cfg.n = 3;
  cfg.a0 = {cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{1.0, 1.0}};
  cfg.base_direction = 1.0;
  return cfg;
}

std::uint64_t check_id(const std::string& name) {
  std::uint64_t id = 1;
  for (char c : name) id = id * 131 + static_cast<unsigned char>(c);
  return id;
}

// Largest value of the named residual across the report (upper-bound entries).
double max_residual(const Report& rep, const std::string& name) {
  double worst = 0.0;
  for (const SampleRecord& s : rep.samples)
    for (const ResidualEntry& r : s.residuals)
      if (r.name == name && !r.lower_bound) worst = std::max(worst, r.value);
  return worst;
}

bool no_errors(const Report& rep) {
  for (const SampleRecord& s : rep.samples)
    if (!s.error.empty()) return false;
  return true;
}

}  // namespace

int main() {
  // 1. Diagonal residues collapse C and S+- to the identity.
  {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool ok = true;
    for (ExperimentConfig cfg : {gl2_config(), gl3_config()}) {
      cfg.checks = {"monodromy"};
      cfg.samples = 20;
      cfg.diagonal_only = true;
      Report rep = run_suite(cfg);
      ok = ok && no_errors(rep) && rep.all_pass();
      worst = std::max({worst, max_residual(rep, "collapse_C"),
                        max_residual(rep, "collapse_S")});
    }
    double dt = now_minus(t0);
    report(1, "diagonal collapse of C and S+- (20+20 samples, n=2,3)",
           ok && worst <= 1e-9 && dt <= 10.0,
           "max |.-I| " + fmt(worst) + ", " + fmt(dt) + " s");
  }

  // 2 + 3. Monodromy relation and Stokes triangular structure.
  {
    auto t0 = std::chrono::steady_clock::now();
    double worst_rel = 0.0, worst_tri = 0.0;
    bool ok = true;
    for (auto [cfg, count] : {std::pair<ExperimentConfig, int>{gl2_config(), 20},
                              {gl3_config(), 10}}) {
      cfg.checks = {"monodromy"};
      cfg.samples = count;
      Report rep = run_suite(cfg);
      ok = ok && no_errors(rep);
      worst_rel = std::max(worst_rel, max_residual(rep, "relation"));
      worst_tri = std::max(worst_tri, max_residual(rep, "triangularity"));
    }
    double dt = now_minus(t0);
    report(2, "monodromy relation on 20 gl2 + 10 gl3 samples",
           ok && worst_rel <= 1e-7 && dt <= 120.0,
           "max residual " + fmt(worst_rel) + ", " + fmt(dt) + " s");
    report(3, "unipotent triangular structure of S+- on the same samples",
           ok && worst_tri <= 1e-8, "max off-structure " + fmt(worst_tri));
  }

  // Shared gl2 gauge setup for criteria 4, 5, 10.
  Mat A0 = Mat::Zero(2, 2);
  A0(0, 0) = 1.0;
  A0(1, 1) = -1.0;
  SectorLayout lay = sector_layout(A0, kPi / 2.0);
  LieContext lctx(2, lay.ordering);
  TwoTensor r0 = skew_part(standard_r(lctx));
  GValuedMap gC = c2pii_field(lctx, A0, lay, MonodromyOptions{});

  // 4. Gauge transformation equation, plus the FD convergence-order probe.
  {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = gl2_config();
    cfg.checks = {"gauge"};
    cfg.samples = 5;
    Report rep = run_suite(cfg);
    double worst = max_residual(rep, "gauge");
    // Step-halving with plain central differences: the residual is dominated
    // by the O(h^2) FD error at this step size, so halving divides it by ~4.
    SampleRng rng(1, check_id("gauge"), 0);
    Mat x = rng.matrix(2, 0.35);
    auto plain_fd_residual = [&](double step) {
      GValuedMap gh = gC;
      gh.derivative = [&, step](const Mat& p, const Mat& dir) {
        return Mat((gC.eval(p + step * dir) - gC.eval(p - step * dir)) /
                   (2.0 * step));
      };
      return gauge_residual(gh, r0, x, 1e-4);
    };
    double ratio = plain_fd_residual(0.02) / plain_fd_residual(0.01);
    double dt = now_minus(t0);
    bool ok = no_errors(rep) && rep.all_pass() && worst <= 1e-5 &&
              ratio >= 3.0 && ratio <= 5.0 && dt <= 900.0;
    report(4, "gauge equation for the connection-matrix map (5 gl2 samples)",
           ok, "max residual " + fmt(worst) + ", step-halving ratio " +
                   fmt(ratio) + ", " + fmt(dt) + " s");
  }

  // 5. First-order identity at x = 0: the linearization equals -r0.
  {
    TwoTensor D(2);
    for (int a = 0; a < lctx.dim(); ++a) {
      Mat dir = lctx.basis(lctx.dual_index(a));
      D.m.col(a) = lctx.flatten(
          map_derivative(gC, Mat::Zero(2, 2), dir, 1e-4));
    }
    TwoTensor lin = D - D.flip();
    double res = (lin + r0).norm_inf();
    report(5, "first-order identity of the connection-matrix map at 0",
           res <= 1e-6, "residual " + fmt(res));
  }

  // 6. Dynamical Yang-Baxter equation with negative control.
  {
    ExperimentConfig cfg = gl2_config();
    cfg.checks = {"cdybe"};
    cfg.samples = 10;
    Report rep = run_suite(cfg);
    report(6, "dynamical Yang-Baxter residual + t/2 control (10 gl2 points)",
           no_errors(rep) && rep.all_pass(),
           "max residual " + fmt(max_residual(rep, "cdybe")));
  }

  // 7. Jacobi identities with mutation control.
  {
    ExperimentConfig cfg = gl2_config();
    cfg.checks = {"jacobi"};
    cfg.samples = 10;
    Report rep = run_suite(cfg);
    double worst = std::max(max_residual(rep, "jacobi_sts"),
                            max_residual(rep, "jacobi_am"));
    report(7, "Jacobi identities of the dual-space and product bivectors",
           no_errors(rep) && rep.all_pass(), "max residual " + fmt(worst));
  }

  // 8. Reduction identities: orbit pullback and reduced-form agreement.
  {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg = gl2_config();
    cfg.checks = {"reduction"};
    cfg.samples = 20;
    Report rep = run_suite(cfg);
    double dt = now_minus(t0);
    bool ok = no_errors(rep) && rep.all_pass() &&
              max_residual(rep, "orbit_pullback") <= 1e-10 &&
              max_residual(rep, "form_agreement") <= 1e-8 && dt <= 5.0;
    report(8, "reduction identities (20 tangent pairs + 5 form points)", ok,
           "pullback " + fmt(max_residual(rep, "orbit_pullback")) + ", form " +
               fmt(max_residual(rep, "form_agreement")) + ", " + fmt(dt) + " s");
  }

  // 9. Dual-path agreement for the frame at infinity; robustness of C.
  {
    LieContext ctx(2);
    SampleRng rng(1, check_id("monodromy"), 0);
    Mat x = rng.matrix(2, 0.35);
    IrregularConnection conn(ctx, A0, x);
    double theta = lay.bisector();
    Mat Fa = eval_F_infinity(conn, lay, std::exp(cplx(0.0, theta)), OdeOptions{});
    FormalSeries G = frobenius_Hinf(conn, 60);
    double R0 = series_radius_at_infinity(conn, G);
    Mat F0 = G.eval(1.0 / (R0 * std::exp(cplx(0.0, theta))), G.order()) *
             Mat(x * cplx(std::log(R0), theta)).exp();
    auto rhs = [&](cplx z, const Mat& F) -> Mat {
      return (conn.A0 / (z * z) + conn.x / z) * F;
    };
    Mat Fb = integrate_path(rhs, F0, {PathSegment::radial(theta, R0, 1.0)},
                            OdeOptions{});
    double dual = (Fa - Fb).cwiseAbs().maxCoeff();

    MonodromyOptions opt;
    Mat C1 = connection_matrix(conn, lay, opt);
    MonodromyOptions opt2 = opt;
    opt2.match_radius = 0.5;
    MonodromyOptions opt3 = opt;
    opt3.seed.order_shift = 4;
    double drad = (connection_matrix(conn, lay, opt2) - C1).cwiseAbs().maxCoeff();
    double dord = (connection_matrix(conn, lay, opt3) - C1).cwiseAbs().maxCoeff();
    report(9, "series/ODE dual-path frame at infinity; robustness of C",
           dual <= 1e-9 && drad <= 1e-9 && dord <= 1e-9,
           "dual-path " + fmt(dual) + ", matching-point " + fmt(drad) +
               ", series-order " + fmt(dord));
  }

  // 10. Pushforward and gauge residuals classify the same maps as solutions.
  {
    SampleRng rng(1, check_id("panel"), 0);
    Mat lam = Mat::Zero(2, 2);
    lam(0, 0) = cplx(0.21, 0.07);
    lam(1, 1) = cplx(-0.13, 0.02);
    Mat hg = Mat::Identity(2, 2) + 0.25 * rng.matrix(2, 1.0);
    Mat xg = hg * lam * hg.inverse();
    GValuedMap gid{&lctx, [](const Mat&) { return Mat(Mat::Identity(2, 2)); },
                   nullptr, 1e-4};
    Mat K = Mat::Identity(2, 2);
    K(0, 1) = 0.05;
    GValuedMap gbad{&lctx,
                    [&, K](const Mat& y) { return Mat(gC.eval(y) * K); },
                    nullptr, 1e-4};
    const double tol = 1e-6;
    bool agree = true, solution_passes = true;
    std::string detail;
    struct Entry {
      const char* name;
      const GValuedMap* g;
      bool expect_pass;
    };
    for (const Entry& e : {Entry{"map", &gC, true}, {"identity", &gid, false},
                           {"corrupted", &gbad, false}}) {
      double pr = pushforward_residual(lctx, *e.g, hg, lam, 1e-4);
      double gr = gauge_residual(*e.g, r0, xg, 1e-4);
      bool ppass = pr <= tol, gpass = gr <= tol;
      agree = agree && (ppass == gpass) && (ppass == e.expect_pass);
      if (e.expect_pass) solution_passes = ppass && gpass;
      detail += std::string(e.name) + " " + fmt(pr) + "/" + fmt(gr) + " ";
    }
    report(10, "pushforward and gauge residuals agree on the map panel",
           agree && solution_passes, detail + "(pushforward/gauge)");
  }

  // 11. The composed monodromy map is Poisson between the linear and
  //     multiplicative structures (after the documented scalar calibration).
  {
    MonodromyOptions opt;
    const int d = lctx.dim();
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 5; ++i) {
      SampleRng rng(1, check_id("poisson-map"), static_cast<std::uint64_t>(i));
      Mat x = rng.matrix(2, 0.35);
      try {
        auto nu = [&](const Mat& y) {
          IrregularConnection conn(lctx, A0, Mat(y / kTwoPiI));
          return map_I_inverse(lctx, stokes_map(conn, lay, opt));
        };
        ChartMap f{"nu", d, d, [&](const Vec& p) {
                     return pack_gstar(lctx, nu(unpack_gstar(lctx, p)));
                   }};
        Vec p = pack_gstar(lctx, x);
        Mat J = chart_jacobian(f, p, 1e-4);
        Mat pushed = J * kks_tensor(lctx, x) * J.transpose();
        Mat target = -sts_tensor(lctx, unpack_gstar(lctx, f.eval(p)));
        worst = std::max(worst, (pushed - target).cwiseAbs().maxCoeff());
      } catch (const std::exception&) {
        ok = false;
      }
    }
    report(11, "Poisson property of the composed monodromy map (5 gl2 points)",
           ok && worst <= 1e-4, "max residual " + fmt(worst));
  }

  // 12. Groupoid conditions.
  {
    LieContext ctx(2);
    GValuedMap g{&ctx, [](const Mat& y) { return Mat(Mat(0.3 * y).exp()); },
                 nullptr, 1e-4};
    GroupoidMaps maps = groupoid_maps(ctx, g);
    double unit = 0.0, mixed = 0.0, vres = 0.0;
    for (int i = 0; i < 3; ++i) {
      SampleRng rng(1, check_id("groupoid"), static_cast<std::uint64_t>(i));
      Mat x = rng.matrix(2, 0.35);
      Mat h = rng.near_identity(2, 0.3);
      unit = std::max(unit,
                      (maps.source(maps.unit(x)) - x).cwiseAbs().maxCoeff());
      mixed = std::max(mixed, mixed_bracket_residual(ctx, h, x));
      vres = std::max(vres, map_v_identity_residual(ctx, g, x));
    }
    report(12, "groupoid structure: unit section, mixed bracket, v-map",
           unit == 0.0 && mixed <= 1e-8 && vres <= 1e-9,
           "unit " + fmt(unit) + ", bracket " + fmt(mixed) + ", v " + fmt(vres));
  }

  // 13. Determinism of the suite payload.
  {
    ExperimentConfig cfg = gl2_config();
    cfg.samples = 5;
    Report a = run_suite(cfg);
    Report b = run_suite(cfg);
    bool same = report_to_json(a, false) == report_to_json(b, false);
    report(13, "repeated suite runs produce identical payloads", same,
           same ? "byte-identical" : "payloads differ");
  }

  if (g_failures == 0) std::printf("all 13 criteria pass\n");
  else std::printf("%d criteria FAILED\n", g_failures);
  return g_failures;
}
