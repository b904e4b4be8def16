#pragma once

#include <cstdint>

#include "monodromy/report.hpp"

namespace monodromy {

// Deterministic sample stream: the RNG state depends only on (seed, check
// name, sample index), so payloads are identical regardless of worker count.
class SampleRng {
 public:
  SampleRng(std::uint64_t seed, std::uint64_t check_id, std::uint64_t index);
  double uniform();          // [-1, 1)
  cplx uniform_complex();    // both parts in [-1, 1)
  Mat matrix(int n, double fro_norm);           // dense, scaled to fro_norm
  Mat diagonal(int n, double fro_norm);         // diagonal, scaled to fro_norm
  Mat near_identity(int n, double spread);      // I + spread * dense unit matrix

 private:
  std::uint64_t m_state;
  std::uint64_t next();
};

// Runs the selected checks (all of them when config.checks is empty) over
// seeded samples on a worker pool and assembles the report single-threaded.
// Per-check sample counts: the monodromy check uses config.samples; the
// slower verifier checks are capped (gauge 5, cdybe 10, jacobi 10,
// reduction 20 algebra pairs + 5 form points, groupoid 10, poisson-map 3)
// to keep a default run bounded. Per-sample exceptions are recorded in the
// sample's error field, not rethrown; the suite fails if any sample fails.
Report run_suite(const ExperimentConfig& config);

// Structural defect of a Stokes matrix: distance of the diagonal from 1 plus
// the magnitude of every entry outside the allowed strict triangle of the
// ordering (upper = true for S_plus).
double stokes_structure_residual(const Ordering& ord, const Mat& S, bool upper);

}  // namespace monodromy
