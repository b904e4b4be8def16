#include "monodromy/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "monodromy/sector_layout.hpp"

namespace monodromy {

namespace {

using nlohmann::json;

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table = {
      {"relation", 1e-7},       {"triangularity", 1e-8},
      {"collapse_C", 1e-9},     {"collapse_S", 1e-9},
      {"gauge", 1e-5},          {"cdybe", 1e-8},
      {"cdybe_control", 1e-2},  {"jacobi_sts", 1e-6},
      {"jacobi_am", 1e-6},      {"jacobi_control", 1e-2},
      {"orbit_pullback", 1e-10},{"form_agreement", 1e-8},
      {"unit_section", 1e-15},  {"mixed_bracket", 1e-8},
      {"v_identity", 1e-9},     {"stokes_map_poisson", 1e-4},
  };
  return table;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw ConfigError("");
    return d;
  } catch (...) {
    throw ConfigError("config: bad numeric value for '" + key + "': " + v);
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long long i = std::stoll(v, &pos);
    if (pos != v.size()) throw ConfigError("");
    return i;
  } catch (...) {
    throw ConfigError("config: bad integer value for '" + key + "': " + v);
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: bad boolean value for '" + key + "': " + v);
}

std::vector<cplx> parse_a0_list(const std::string& v) {
  std::vector<cplx> out;
  for (const std::string& item : split(v, ',')) out.push_back(parse_complex(item));
  return out;
}

void set_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") cfg.n = static_cast<int>(parse_int(key, value));
  else if (key == "a0") cfg.a0 = parse_a0_list(value);
  else if (key == "base_dir") cfg.base_direction = parse_double(key, value);
  else if (key == "samples") cfg.samples = static_cast<int>(parse_int(key, value));
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "xnorm") cfg.xnorm = parse_double(key, value);
  else if (key == "ode_rtol") cfg.ode_rtol = parse_double(key, value);
  else if (key == "ode_atol") cfg.ode_atol = parse_double(key, value);
  else if (key == "fd_step") cfg.fd_step = parse_double(key, value);
  else if (key == "series_order") cfg.series_order = static_cast<int>(parse_int(key, value));
  else if (key == "workers") cfg.workers = static_cast<int>(parse_int(key, value));
  else if (key == "diagonal_only") cfg.diagonal_only = parse_bool(key, value);
  else if (key == "checks") {
    cfg.checks.clear();
    if (!trim(value).empty())
      for (const std::string& c : split(value, ',')) cfg.checks.push_back(c);
  } else if (key == "out") cfg.out_path = value;
  else if (key == "format") cfg.format = value;
  else if (key == "plot") cfg.plot_path = value;
  else if (key.rfind("tol.", 0) == 0) {
    std::string name = key.substr(4);
    if (!default_tolerances().count(name))
      throw ConfigError("config: unknown tolerance name '" + name + "'");
    cfg.tolerances[name] = parse_double(key, value);
  } else throw ConfigError("config: unknown key '" + key + "'");
}

}  // namespace

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      "monodromy", "gauge", "cdybe", "jacobi",
      "reduction", "groupoid", "poisson-map"};
  return names;
}

std::vector<std::string> all_residual_names() {
  std::vector<std::string> names;
  for (const auto& [name, tol] : default_tolerances()) names.push_back(name);
  return names;
}

double default_tolerance(const std::string& residual_name) {
  auto it = default_tolerances().find(residual_name);
  if (it == default_tolerances().end())
    throw ConfigError("unknown residual name '" + residual_name + "'");
  return it->second;
}

double tolerance_for(const ExperimentConfig& cfg, const std::string& residual_name) {
  auto it = cfg.tolerances.find(residual_name);
  return it != cfg.tolerances.end() ? it->second : default_tolerance(residual_name);
}

Mat a0_matrix(const ExperimentConfig& cfg) {
  Mat A0 = Mat::Zero(cfg.n, cfg.n);
  for (int i = 0; i < cfg.n && i < static_cast<int>(cfg.a0.size()); ++i)
    A0(i, i) = cfg.a0[i];
  return A0;
}

cplx parse_complex(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw ConfigError("empty complex entry");
  // Split re/im at the last +/- that is not a leading sign or an exponent sign.
  size_t cut = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  auto num = [&](std::string part) -> double {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    size_t pos = 0;
    double d = std::stod(part, &pos);
    if (pos != part.size()) throw ConfigError("bad complex entry: " + text);
    return d;
  };
  try {
    bool tail_imag = s.back() == 'i' || s.back() == 'j';
    if (tail_imag) s.pop_back();
    if (cut == std::string::npos) {
      double v = num(s);
      return tail_imag ? cplx{0.0, v} : cplx{v, 0.0};
    }
    if (!tail_imag) throw ConfigError("bad complex entry: " + text);
    return {num(s.substr(0, cut)), num(s.substr(cut))};
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    throw ConfigError("bad complex entry: " + text);
  }
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os << z.real();
  if (z.imag() != 0.0) os << (z.imag() >= 0 ? "+" : "") << z.imag() << "i";
  return os.str();
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected key=value, got '" + t + "'");
    set_key(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

void apply_json_overrides(ExperimentConfig& cfg, const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: bad JSON override: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: JSON override must be an object");
  for (auto& [key, value] : j.items()) {
    if (key == "tol" && value.is_object()) {
      for (auto& [name, tol] : value.items())
        set_key(cfg, "tol." + name, json(tol).dump());
      continue;
    }
    if (key == "a0" && value.is_array()) {
      std::vector<cplx> entries;
      for (auto& e : value) {
        if (e.is_array() && e.size() == 2)
          entries.push_back({e[0].get<double>(), e[1].get<double>()});
        else if (e.is_number())
          entries.push_back({e.get<double>(), 0.0});
        else if (e.is_string())
          entries.push_back(parse_complex(e.get<std::string>()));
        else
          throw ConfigError("config: bad a0 entry in JSON override");
      }
      cfg.a0 = entries;
      continue;
    }
    if (key == "checks" && value.is_array()) {
      cfg.checks.clear();
      for (auto& c : value) cfg.checks.push_back(c.get<std::string>());
      continue;
    }
    std::string text = value.is_string() ? value.get<std::string>() : value.dump();
    set_key(cfg, key, text);
  }
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n < 1) throw ConfigError("config: n must be positive");
  if (static_cast<int>(cfg.a0.size()) != cfg.n)
    throw ConfigError("config: a0 must have exactly n entries");
  if (cfg.samples < 0) throw ConfigError("config: samples must be nonnegative");
  if (!(cfg.xnorm > 0)) throw ConfigError("config: xnorm must be positive");
  if (!(cfg.ode_rtol > 0) || !(cfg.ode_atol > 0))
    throw ConfigError("config: ODE tolerances must be positive");
  if (!(cfg.fd_step > 0)) throw ConfigError("config: fd_step must be positive");
  if (cfg.series_order < 1) throw ConfigError("config: series_order must be >= 1");
  if (cfg.workers < 0) throw ConfigError("config: workers must be nonnegative");
  if (cfg.format != "json" && cfg.format != "csv")
    throw ConfigError("config: format must be json or csv");
  for (const auto& [name, tol] : cfg.tolerances)
    if (!(tol > 0)) throw ConfigError("config: tolerance '" + name + "' must be positive");
  for (const std::string& c : cfg.checks) {
    const auto& names = all_check_names();
    if (std::find(names.begin(), names.end(), c) == names.end())
      throw ConfigError("config: unknown check '" + c + "'");
  }
  if (cfg.n > 1) {
    // Regularity of A0 and admissibility of the base direction.
    try {
      sector_layout(a0_matrix(cfg), cfg.base_direction);
    } catch (const Error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
}

}  // namespace monodromy
