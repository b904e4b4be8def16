// Command-line driver for the monodromy verification library: computes
// connection/Stokes data, runs the verifier checks over seeded samples, and
// renders ray diagrams. Exit code 0 iff every executed check passes.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "monodromy/report.hpp"
#include "monodromy/suite.hpp"
#include "monodromy/svg.hpp"

using namespace monodromy;

namespace {

struct CliState {
  ExperimentConfig cfg;
  std::string config_file;
  std::string config_json;  // file path or inline JSON object
  std::string a0_text;
  std::string checks_text;
};

// Shared flags for every experiment subcommand.
void add_common_options(CLI::App* sub, CliState& st) {
  sub->add_option("--config", st.config_file,
                  "key=value config file (defaults applied first)");
  sub->add_option("--config-json", st.config_json,
                  "JSON override: inline object or a path to a .json file");
  sub->add_option("--n", st.cfg.n, "matrix dimension");
  sub->add_option("--a0", st.a0_text,
                  "comma-separated complex diagonal entries, e.g. 1,-1 or 0,1,1+1i");
  sub->add_option("--base-dir", st.cfg.base_direction,
                  "base direction in radians (must avoid the rays)");
  sub->add_option("--samples", st.cfg.samples, "sample count for the monodromy check");
  sub->add_option("--seed", st.cfg.seed, "RNG seed");
  sub->add_option("--xnorm", st.cfg.xnorm, "Frobenius norm of the sampled residues");
  sub->add_option("--ode-rtol", st.cfg.ode_rtol, "ODE relative tolerance");
  sub->add_option("--ode-atol", st.cfg.ode_atol, "ODE absolute tolerance");
  sub->add_option("--fd-step", st.cfg.fd_step, "finite-difference step");
  sub->add_option("--series-order", st.cfg.series_order,
                  "cap on the pole-series truncation order");
  sub->add_option("--workers", st.cfg.workers,
                  "worker threads (0 = available parallelism)");
  sub->add_flag("--diagonal", st.cfg.diagonal_only,
                "restrict the sampled residues to diagonal matrices");
  sub->add_option("--out", st.cfg.out_path, "report output path");
  sub->add_option("--format", st.cfg.format, "report format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--plot", st.cfg.plot_path, "also write a ray-diagram SVG here");
  for (const std::string& name : all_residual_names())
    sub->add_option_function<double>(
        "--tol." + name,
        [&st, name](double v) { st.cfg.tolerances[name] = v; },
        "tolerance override for the '" + name + "' residual");
}

// Resolves the final config: file, then JSON override, then explicit flags.
ExperimentConfig resolve_config(const CliState& st, const CLI::App* sub) {
  ExperimentConfig cfg;
  if (!st.config_file.empty()) cfg = parse_config_file(st.config_file);
  if (!st.config_json.empty()) {
    std::string text = st.config_json;
    if (!text.empty() && text[0] != '{') {
      std::ifstream f(text);
      if (!f) throw ConfigError("cannot open JSON override file '" + text + "'");
      std::stringstream ss;
      ss << f.rdbuf();
      text = ss.str();
    }
    apply_json_overrides(cfg, text);
  }
  // Explicit command-line flags win over both layers.
  auto take = [&](const std::string& flag) { return sub->count(flag) > 0; };
  if (take("--n")) cfg.n = st.cfg.n;
  if (take("--a0")) {
    cfg.a0.clear();
    std::stringstream ss(st.a0_text);
    std::string item;
    while (std::getline(ss, item, ',')) cfg.a0.push_back(parse_complex(item));
  }
  if (take("--base-dir")) cfg.base_direction = st.cfg.base_direction;
  if (take("--samples")) cfg.samples = st.cfg.samples;
  if (take("--seed")) cfg.seed = st.cfg.seed;
  if (take("--xnorm")) cfg.xnorm = st.cfg.xnorm;
  if (take("--ode-rtol")) cfg.ode_rtol = st.cfg.ode_rtol;
  if (take("--ode-atol")) cfg.ode_atol = st.cfg.ode_atol;
  if (take("--fd-step")) cfg.fd_step = st.cfg.fd_step;
  if (take("--series-order")) cfg.series_order = st.cfg.series_order;
  if (take("--workers")) cfg.workers = st.cfg.workers;
  if (take("--diagonal")) cfg.diagonal_only = st.cfg.diagonal_only;
  if (take("--out")) cfg.out_path = st.cfg.out_path;
  if (take("--format")) cfg.format = st.cfg.format;
  if (take("--plot")) cfg.plot_path = st.cfg.plot_path;
  for (const auto& [name, tol] : st.cfg.tolerances) cfg.tolerances[name] = tol;
  return cfg;
}

int run_checks(const CliState& st, const CLI::App* sub,
               const std::vector<std::string>& checks) {
  ExperimentConfig cfg = resolve_config(st, sub);
  if (!checks.empty()) cfg.checks = checks;
  validate(cfg);

  Report report = run_suite(cfg);

  if (!cfg.plot_path.empty())
    plot_rays(a0_matrix(cfg), cfg.base_direction, cfg.plot_path);

  if (!cfg.out_path.empty())
    write_report(report, cfg.out_path, cfg.format);
  else if (cfg.format == "csv")
    std::cout << report_to_csv(report);
  else
    std::cout << report_to_json(report);

  // One summary line per check on stderr, failures spelled out.
  std::map<std::string, std::pair<int, int>> tally;  // check -> (pass, total)
  for (const SampleRecord& s : report.samples) {
    auto& [pass, total] = tally[s.check];
    ++total;
    if (s.pass()) ++pass;
    else {
      std::cerr << "FAIL " << s.check << "[" << s.index << "]";
      if (!s.error.empty()) std::cerr << " error: " << s.error;
      for (const ResidualEntry& r : s.residuals)
        if (!r.pass)
          std::cerr << " " << r.name << "=" << r.value
                    << (r.lower_bound ? " < " : " > ") << r.tolerance;
      std::cerr << "\n";
    }
  }
  for (const auto& [check, pt] : tally)
    std::cerr << check << ": " << pt.first << "/" << pt.second << " samples pass\n";
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"monodromy data of meromorphic connections: computation and "
               "verification suite"};
  app.require_subcommand(1);

  std::map<const CLI::App*, std::pair<CliState, std::vector<std::string>>> subs;
  auto add_sub = [&](const std::string& name, const std::string& desc,
                     std::vector<std::string> checks) {
    CLI::App* sub = app.add_subcommand(name, desc);
    auto& entry = subs[sub];
    entry.second = std::move(checks);
    add_common_options(sub, entry.first);
    return sub;
  };

  add_sub("rays", "render the ray diagram of A0 as SVG", {});
  add_sub("monodromy",
          "connection/Stokes matrices, monodromy relation, triangularity",
          {"monodromy"});
  add_sub("gauge-check", "r-matrix gauge transformation residual", {"gauge"});
  add_sub("cdybe-check", "dynamical Yang-Baxter residual with negative control",
          {"cdybe"});
  add_sub("poisson-check",
          "Jacobi identities and the Poisson property of the Stokes map",
          {"jacobi", "poisson-map"});
  add_sub("reduction-check", "orbit-pullback and reduced-form agreement",
          {"reduction"});
  add_sub("groupoid-check", "groupoid structure-map identities", {"groupoid"});
  add_sub("suite", "run every check (or the subset given by config 'checks')", {});

  CLI11_PARSE(app, argc, argv);

  try {
    const CLI::App* sub = app.get_subcommands().front();
    auto& [state, checks] = subs.at(sub);
    if (sub->get_name() == "rays") {
      ExperimentConfig cfg = resolve_config(state, sub);
      validate(cfg);
      std::string out = !cfg.plot_path.empty() ? cfg.plot_path : cfg.out_path;
      if (out.empty()) {
        std::cout << render_rays(a0_matrix(cfg), cfg.base_direction);
        return 0;
      }
      plot_rays(a0_matrix(cfg), cfg.base_direction, out);
      std::cerr << "wrote " << out << "\n";
      return 0;
    }
    return run_checks(state, sub, checks);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
