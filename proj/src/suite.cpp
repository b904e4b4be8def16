#include "monodromy/suite.hpp"

#include <atomic>
#include <chrono>
#include <thread>
#include <unsupported/Eigen/MatrixFunctions>

#include "monodromy/factorization.hpp"
#include "monodromy/groupoid.hpp"
#include "monodromy/reductions.hpp"
#include "monodromy/rmatrix.hpp"
#include "monodromy/verifiers.hpp"

namespace monodromy {

//------------------------------------------------------------------------------
// SampleRng (splitmix64 core)
//------------------------------------------------------------------------------

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t check_id,
                     std::uint64_t index)
    : m_state(seed * 0x9e3779b97f4a7c15ull + check_id * 0xbf58476d1ce4e5b9ull +
              index * 0x94d049bb133111ebull) {
  for (int i = 0; i < 4; ++i) next();  // decorrelate nearby seeds
}

std::uint64_t SampleRng::next() {
  std::uint64_t z = (m_state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SampleRng::uniform() { return (next() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }

cplx SampleRng::uniform_complex() {
  double re = uniform(), im = uniform();
  return {re, im};
}

Mat SampleRng::matrix(int n, double fro_norm) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = uniform_complex();
  return m * (fro_norm / m.norm());
}

Mat SampleRng::diagonal(int n, double fro_norm) {
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = uniform_complex();
  return m * (fro_norm / m.norm());
}

Mat SampleRng::near_identity(int n, double spread) {
  Mat d = matrix(n, 1.0);
  return Mat::Identity(n, n) + spread * d;
}

//------------------------------------------------------------------------------
// Structural defect of a Stokes matrix
//------------------------------------------------------------------------------

double stokes_structure_residual(const Ordering& ord, const Mat& S, bool upper) {
  const int n = static_cast<int>(S.rows());
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        worst = std::max(worst, std::abs(S(i, i) - cplx{1.0, 0.0}));
        continue;
      }
      bool allowed = upper ? ord.is_positive(i, j) : ord.is_positive(j, i);
      if (!allowed) worst = std::max(worst, std::abs(S(i, j)));
    }
  return worst;
}

//------------------------------------------------------------------------------
// Suite tasks
//------------------------------------------------------------------------------

namespace {

struct SuiteEnv {
  const ExperimentConfig* cfg = nullptr;
  Mat A0;
  MonodromyOptions opt;
};

MonodromyOptions monodromy_options(const ExperimentConfig& cfg) {
  MonodromyOptions opt;
  opt.ode.rtol = cfg.ode_rtol;
  opt.ode.atol = cfg.ode_atol;
  opt.seed.max_order = cfg.series_order;
  return opt;
}

ResidualEntry upper_entry(const ExperimentConfig& cfg, const std::string& name,
                          double value) {
  return ResidualEntry::upper(name, value, tolerance_for(cfg, name));
}
ResidualEntry lower_entry(const ExperimentConfig& cfg, const std::string& name,
                          double value) {
  return ResidualEntry::lower(name, value, tolerance_for(cfg, name));
}

void run_monodromy_sample(const SuiteEnv& env, SampleRng& rng, SampleRecord& rec) {
  const ExperimentConfig& cfg = *env.cfg;
  SectorLayout lay = sector_layout(env.A0, cfg.base_direction);
  LieContext ctx(cfg.n);
  Mat x = cfg.diagonal_only ? rng.diagonal(cfg.n, cfg.xnorm)
                            : rng.matrix(cfg.n, cfg.xnorm);
  rec.x = x;
  IrregularConnection conn(ctx, env.A0, x);
  MonodromyData md = monodromy_data(conn, lay, env.opt);
  rec.C = md.C;
  rec.S_plus = md.S_plus;
  rec.S_minus = md.S_minus;
  rec.residuals.push_back(
      upper_entry(cfg, "relation", monodromy_relation_residual(md)));
  double tri = std::max(stokes_structure_residual(lay.ordering, md.S_plus, true),
                        stokes_structure_residual(lay.ordering, md.S_minus, false));
  rec.residuals.push_back(upper_entry(cfg, "triangularity", tri));
  if (cfg.diagonal_only) {
    Mat I = Mat::Identity(cfg.n, cfg.n);
    rec.residuals.push_back(
        upper_entry(cfg, "collapse_C", (md.C - I).cwiseAbs().maxCoeff()));
    double s = std::max((md.S_plus - I).cwiseAbs().maxCoeff(),
                        (md.S_minus - I).cwiseAbs().maxCoeff());
    rec.residuals.push_back(upper_entry(cfg, "collapse_S", s));
  }
}

void run_gauge_sample(const SuiteEnv& env, SampleRng& rng, SampleRecord& rec) {
  const ExperimentConfig& cfg = *env.cfg;
  SectorLayout lay = sector_layout(env.A0, cfg.base_direction);
  LieContext ctx(cfg.n, lay.ordering);
  Mat x = rng.matrix(cfg.n, cfg.xnorm);
  rec.x = x;
  TwoTensor r0 = skew_part(standard_r(ctx));
  GValuedMap g = c2pii_field(ctx, env.A0, lay, env.opt);
  rec.residuals.push_back(
      upper_entry(cfg, "gauge", gauge_residual(g, r0, x, cfg.fd_step)));
}

void run_cdybe_sample(const SuiteEnv& env, SampleRng& rng, SampleRecord& rec) {
  const ExperimentConfig& cfg = *env.cfg;
  LieContext ctx(cfg.n);
  Mat x = rng.matrix(cfg.n, cfg.xnorm);
  rec.x = x;
  TwoTensor half_t = casimir(ctx) * cplx{0.5, 0.0};
  DynamicalRMatrix full{&ctx, [&ctx, half_t](const Mat& y) {
                          return r_am(ctx, y) + half_t;
                        }};
  rec.residuals.push_back(upper_entry(
      cfg, "cdybe", cdybe_residual(full, x, cfg.fd_step).norm_inf()));
  DynamicalRMatrix control{&ctx, [half_t](const Mat&) { return half_t; }};
  rec.residuals.push_back(lower_entry(
      cfg, "cdybe_control", cdybe_residual(control, x, cfg.fd_step).norm_inf()));
}

void run_jacobi_sample(const SuiteEnv& env, SampleRng& rng, SampleRecord& rec) {
  const ExperimentConfig& cfg = *env.cfg;
  LieContext ctx(cfg.n);
  Mat x = rng.matrix(cfg.n, cfg.xnorm);
  Mat h = rng.near_identity(cfg.n, 0.2);
  rec.x = x;
  rec.residuals.push_back(upper_entry(
      cfg, "jacobi_sts",
      jacobi_residual(sts_field(ctx), pack_gstar(ctx, x), cfg.fd_step)));
  rec.residuals.push_back(upper_entry(
      cfg, "jacobi_am",
      jacobi_residual(pi_am_field(ctx), pack_pair(ctx, h, x), cfg.fd_step)));
  // Negative control: drop the right-translated r0 term from the G x g* tensor.
  TwoTensor r0 = skew_part(standard_r(ctx));
  TensorField mutated{"mutated", &ctx, 2 * ctx.dim(), [&ctx, r0](const Vec& p) {
                        Mat hh, xx;
                        unpack_pair(ctx, p, hh, xx);
                        Mat P = pi_am_tensor(ctx, hh, xx);
                        Mat Rh = ctx.right_mult(hh);
                        P.block(0, 0, ctx.dim(), ctx.dim()) +=
                            Rh * r0.m * Rh.transpose();
                        return P;
                      }};
  rec.residuals.push_back(lower_entry(
      cfg, "jacobi_control",
      jacobi_residual(mutated, pack_pair(ctx, h, x), cfg.fd_step)));
}

void run_reduction_sample(const SuiteEnv& env, SampleRng& rng, SampleRecord& rec) {
  const ExperimentConfig& cfg = *env.cfg;
  const int n = cfg.n;
  LieContext ctx(n);
  Mat g1 = rng.near_identity(n, 0.3);
  Mat g2 = rng.near_identity(n, 0.3);
  Mat lam0 = rng.diagonal(n, 0.4);
  for (int i = 0; i < n; ++i) lam0(i, i) += cplx{0.5 * (n - 1) - 1.0 * i, 0.0};
  Mat x1 = g1.partialPivLu().solve(lam0 * g1);
  Mat X1 = rng.matrix(n, 1.0), X2 = rng.matrix(n, 1.0);
  Mat R1 = rng.diagonal(n, 1.0), R2 = rng.diagonal(n, 1.0);
  OrbitPullbackValues v =
      reduction_orbit_pullback(ctx, env.A0, g1, x1, g2, X1, R1, X2, R2);
  double dev = std::max(std::abs(v.upstairs - v.display),
                        std::abs(v.downstairs - v.display));
  rec.residuals.push_back(upper_entry(cfg, "orbit_pullback", dev));
  if (rec.index < 5) {
    Mat hh = rng.near_identity(n, 0.2);
    Mat ll = rng.diagonal(n, 0.1);
    for (int i = 0; i < n; ++i) ll(i, i) += cplx{0.15 * (n - 1) - 0.3 * i, 0.0};
    Mat CC = rng.near_identity(n, 0.2);
    Mat dh1 = rng.matrix(n, 1.0), dl1 = rng.diagonal(n, 1.0), dc1 = rng.matrix(n, 1.0);
    Mat dh2 = rng.matrix(n, 1.0), dl2 = rng.diagonal(n, 1.0), dc2 = rng.matrix(n, 1.0);
    FormAgreementValues w = reduction_monodromy_form_agreement(
        ctx, hh, ll, CC, dh1, dl1, dc1, dh2, dl2, dc2);
    rec.residuals.push_back(upper_entry(cfg, "form_agreement",
                                        std::abs(w.upstairs - w.downstairs)));
  }
}

void run_groupoid_sample(const SuiteEnv& env, SampleRng& rng, SampleRecord& rec) {
  const ExperimentConfig& cfg = *env.cfg;
  const int n = cfg.n;
  LieContext ctx(n);
  Mat x = rng.matrix(n, cfg.xnorm);
  Mat h = rng.near_identity(n, 0.3);
  rec.x = x;
  // Synthetic smooth solution-like map; the identities below are definitional
  // for any invertible map, which is exactly what this check certifies.
  GValuedMap g{&ctx, [](const Mat& y) { return Mat(Mat(0.3 * y).exp()); },
               nullptr, 1e-4};
  GroupoidMaps maps = groupoid_maps(ctx, g);
  double unit_dev = (maps.source(maps.unit(x)) - x).cwiseAbs().maxCoeff();
  rec.residuals.push_back(upper_entry(cfg, "unit_section", unit_dev));
  rec.residuals.push_back(
      upper_entry(cfg, "mixed_bracket", mixed_bracket_residual(ctx, h, x)));
  rec.residuals.push_back(
      upper_entry(cfg, "v_identity", map_v_identity_residual(ctx, g, x)));
}

void run_poisson_map_sample(const SuiteEnv& env, SampleRng& rng, SampleRecord& rec) {
  const ExperimentConfig& cfg = *env.cfg;
  SectorLayout lay = sector_layout(env.A0, cfg.base_direction);
  LieContext ctx(cfg.n, lay.ordering);
  const int d = ctx.dim();
  Mat x = rng.matrix(cfg.n, cfg.xnorm);
  rec.x = x;
  // Calibrated composite: argument scaled by 1/(2 pi i) before the monodromy
  // computation; the pushed-forward linear tensor matches minus the
  // multiplicative one (both constants frozen on diagonal data).
  auto nu = [&](const Mat& y) {
    IrregularConnection conn(ctx, env.A0, Mat(y / kTwoPiI));
    return map_I_inverse(ctx, stokes_map(conn, lay, env.opt));
  };
  ChartMap f{"nu", d, d, [&](const Vec& p) {
               return pack_gstar(ctx, nu(unpack_gstar(ctx, p)));
             }};
  Vec p = pack_gstar(ctx, x);
  Mat J = chart_jacobian(f, p, cfg.fd_step);
  Mat pushed = J * kks_tensor(ctx, x) * J.transpose();
  Mat target = -sts_tensor(ctx, unpack_gstar(ctx, f.eval(p)));
  rec.residuals.push_back(upper_entry(cfg, "stokes_map_poisson",
                                      (pushed - target).cwiseAbs().maxCoeff()));
}

struct Task {
  std::string check;
  std::uint64_t check_id = 0;
  int index = 0;
  void (*run)(const SuiteEnv&, SampleRng&, SampleRecord&) = nullptr;
};

int check_sample_count(const std::string& check, int samples) {
  if (check == "monodromy") return samples;
  if (check == "gauge") return std::min(samples, 5);
  if (check == "cdybe") return std::min(samples, 10);
  if (check == "jacobi") return std::min(samples, 10);
  if (check == "reduction") return std::min(samples, 20);
  if (check == "groupoid") return std::min(samples, 10);
  if (check == "poisson-map") return std::min(samples, 3);
  return samples;
}

}  // namespace

Report run_suite(const ExperimentConfig& config) {
  validate(config);
  auto t_start = std::chrono::steady_clock::now();

  Report report;
  report.config = config;
  report.environment = environment_stamp();

  const std::vector<std::string>& selected =
      config.checks.empty() ? all_check_names() : config.checks;

  std::vector<Task> tasks;
  for (const std::string& check : selected) {
    void (*fn)(const SuiteEnv&, SampleRng&, SampleRecord&) = nullptr;
    if (check == "monodromy") fn = run_monodromy_sample;
    else if (check == "gauge") fn = run_gauge_sample;
    else if (check == "cdybe") fn = run_cdybe_sample;
    else if (check == "jacobi") fn = run_jacobi_sample;
    else if (check == "reduction") fn = run_reduction_sample;
    else if (check == "groupoid") fn = run_groupoid_sample;
    else if (check == "poisson-map") fn = run_poisson_map_sample;
    else throw ConfigError("suite: unknown check '" + check + "'");
    std::uint64_t check_id = 1;
    for (char c : check) check_id = check_id * 131 + static_cast<unsigned char>(c);
    int count = check_sample_count(check, config.samples);
    for (int i = 0; i < count; ++i) tasks.push_back({check, check_id, i, fn});
  }

  std::vector<SampleRecord> records(tasks.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    SuiteEnv env;
    env.cfg = &config;
    env.A0 = a0_matrix(config);
    env.opt = monodromy_options(config);
    for (;;) {
      size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      SampleRecord& rec = records[i];
      rec.check = task.check;
      rec.index = task.index;
      SampleRng rng(config.seed, task.check_id, static_cast<std::uint64_t>(task.index));
      auto t0 = std::chrono::steady_clock::now();
      try {
        task.run(env, rng, rec);
      } catch (const std::exception& e) {
        rec.error = e.what();
      }
      rec.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
    }
  };

  unsigned requested = config.workers > 0
                           ? static_cast<unsigned>(config.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  unsigned n_workers =
      std::min<unsigned>(requested, std::max<size_t>(tasks.size(), 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // Single-threaded assembly: records are already in canonical task order.
  report.samples = std::move(records);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

}  // namespace monodromy
