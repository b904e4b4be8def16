#pragma once

#include "monodromy/config.hpp"

namespace monodromy {

// One tested residual. kind "upper": pass iff value <= tolerance (the usual
// case). kind "lower": pass iff value >= tolerance (negative controls, which
// must stay visibly nonzero).
struct ResidualEntry {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;
  bool pass = false;

  static ResidualEntry upper(std::string name, double value, double tol) {
    return {std::move(name), value, tol, false, value <= tol};
  }
  static ResidualEntry lower(std::string name, double value, double tol) {
    return {std::move(name), value, tol, true, value >= tol};
  }
};

// One unit of suite work: a (check, sample index) pair with its inputs,
// computed monodromy data where applicable, and the tested residuals.
struct SampleRecord {
  std::string check;
  int index = 0;
  Mat x;                 // sampled residue (may be empty for algebra checks)
  Mat C, S_plus, S_minus;  // filled by the monodromy check
  std::vector<ResidualEntry> residuals;
  std::string error;     // nonempty when the sample failed with an exception
  double elapsed_seconds = 0.0;

  bool pass() const;
};

struct Report {
  ExperimentConfig config;
  std::string environment;  // compiler/platform stamp
  std::vector<SampleRecord> samples;
  double elapsed_seconds = 0.0;

  bool all_pass() const;
};

std::string environment_stamp();

// Canonical JSON rendering. Timing fields are emitted only when
// include_timings is set, so two runs with the same seed compare
// byte-identically with it cleared. Complex numbers are [re, im] pairs,
// matrices row-major nested arrays.
std::string report_to_json(const Report& report, bool include_timings = true);

// Flattened per-sample CSV: one row per residual entry.
std::string report_to_csv(const Report& report);

// Write in the requested format ("json" | "csv").
void write_report(const Report& report, const std::string& path,
                  const std::string& format);

}  // namespace monodromy
