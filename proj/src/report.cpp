#include "monodromy/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace monodromy {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json matrix_json(const Mat& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["n"] = c.n;
  ordered_json a0 = ordered_json::array();
  for (cplx z : c.a0) a0.push_back(complex_json(z));
  j["a0"] = a0;
  j["base_dir"] = c.base_direction;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["xnorm"] = c.xnorm;
  j["ode_rtol"] = c.ode_rtol;
  j["ode_atol"] = c.ode_atol;
  j["fd_step"] = c.fd_step;
  j["series_order"] = c.series_order;
  j["workers"] = c.workers;
  j["diagonal_only"] = c.diagonal_only;
  j["checks"] = c.checks.empty() ? all_check_names() : c.checks;
  ordered_json tol = ordered_json::object();
  for (const auto& [name, t] : c.tolerances) tol[name] = t;
  j["tol"] = tol;
  return j;
}

}  // namespace

bool SampleRecord::pass() const {
  if (!error.empty()) return false;
  for (const ResidualEntry& r : residuals)
    if (!r.pass) return false;
  return true;
}

bool Report::all_pass() const {
  for (const SampleRecord& s : samples)
    if (!s.pass()) return false;
  return true;
}

std::string environment_stamp() {
  std::ostringstream os;
#if defined(__clang__)
  os << "clang " << __clang_major__ << "." << __clang_minor__;
#elif defined(__GNUC__)
  os << "gcc " << __GNUC__ << "." << __GNUC_MINOR__;
#else
  os << "unknown-compiler";
#endif
  os << ", eigen " << EIGEN_WORLD_VERSION << "." << EIGEN_MAJOR_VERSION << "."
     << EIGEN_MINOR_VERSION;
#if defined(__linux__)
  os << ", linux";
#endif
  os << ", sizeof(void*)=" << sizeof(void*);
  return os.str();
}

std::string report_to_json(const Report& report, bool include_timings) {
  ordered_json j;
  j["environment"] = report.environment;
  j["config"] = config_json(report.config);
  j["all_pass"] = report.all_pass();
  if (include_timings) j["elapsed_seconds"] = report.elapsed_seconds;
  ordered_json samples = ordered_json::array();
  for (const SampleRecord& s : report.samples) {
    ordered_json js;
    js["check"] = s.check;
    js["index"] = s.index;
    if (s.x.size() > 0) js["x"] = matrix_json(s.x);
    if (s.C.size() > 0) js["C"] = matrix_json(s.C);
    if (s.S_plus.size() > 0) js["S_plus"] = matrix_json(s.S_plus);
    if (s.S_minus.size() > 0) js["S_minus"] = matrix_json(s.S_minus);
    ordered_json res = ordered_json::array();
    for (const ResidualEntry& r : s.residuals) {
      ordered_json jr;
      jr["name"] = r.name;
      jr["value"] = r.value;
      jr["tolerance"] = r.tolerance;
      jr["kind"] = r.lower_bound ? "lower" : "upper";
      jr["pass"] = r.pass;
      res.push_back(jr);
    }
    js["residuals"] = res;
    if (!s.error.empty()) js["error"] = s.error;
    js["pass"] = s.pass();
    if (include_timings) js["elapsed_seconds"] = s.elapsed_seconds;
    samples.push_back(js);
  }
  j["samples"] = samples;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const Report& report) {
  std::ostringstream os;
  os << "check,index,residual,value,tolerance,kind,pass,error\n";
  os.precision(17);
  for (const SampleRecord& s : report.samples) {
    if (s.residuals.empty()) {
      os << s.check << "," << s.index << ",,,,," << (s.pass() ? "1" : "0")
         << ",\"" << s.error << "\"\n";
      continue;
    }
    for (const ResidualEntry& r : s.residuals)
      os << s.check << "," << s.index << "," << r.name << "," << r.value << ","
         << r.tolerance << "," << (r.lower_bound ? "lower" : "upper") << ","
         << (r.pass ? "1" : "0") << ",\"" << s.error << "\"\n";
  }
  return os.str();
}

void write_report(const Report& report, const std::string& path,
                  const std::string& format) {
  std::ofstream f(path);
  if (!f) throw ConfigError("report: cannot open output file '" + path + "'");
  f << (format == "csv" ? report_to_csv(report) : report_to_json(report));
}

}  // namespace monodromy
