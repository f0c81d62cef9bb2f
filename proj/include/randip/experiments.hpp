#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "randip/oracle.hpp"
#include "randip/roundip.hpp"

namespace randip {

enum class X0Mode { kHalf, kUniform };

// Monte Carlo sweep over a list of radii with common random numbers: trial
// i reuses the same matrix, center and solver stream at every R, so the
// feasible fraction is exactly nondecreasing in R rather than merely
// statistically so. Trial i draws from streams (4i, 4i+1, 4i+2) of `seed`.
struct SweepConfig {
  int n = 0;
  int m = 0;
  double sigma = 1.0;
  std::vector<double> r_values;
  int trials = 1;
  std::uint64_t seed = 0;
  X0Mode x0_mode = X0Mode::kHalf;
  bool run_exhaustive = false;
  int box_k = 3;
  int jobs = 0;
  RoundIpConfig roundip;
  EnumGuards guards;
};

struct SweepRecord {
  int n = 0;
  int m = 0;
  double sigma = 1.0;
  double r = 0.0;
  int trials = 0;
  int feasible_constructive = 0;
  std::optional<int> feasible_exhaustive;
  double mean_attempts = 0.0;
  std::uint64_t seed = 0;
};

std::vector<SweepRecord> sweep(const SweepConfig& config);

// CSV with exactly the columns
//   n,m,sigma,R,trials,feasible_constructive,feasible_exhaustive,mean_attempts,seed
// and an empty feasible_exhaustive field when the oracle was not run.
std::string sweep_csv(std::span<const SweepRecord> records);

// R at which the linearly interpolated feasible fraction first crosses 1/2;
// empty when the fractions never cross. Records must share (n, m); the
// exhaustive fraction is used when present, the constructive one otherwise.
std::optional<double> estimate_crossover(std::span<const SweepRecord> records);

struct AuditConfig {
  int n = 0;
  int m = 0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  int samples_per_size = 200;
};

// Per subset size s: the largest squared row norm restricted to sampled
// s-subsets, against the concentration envelope 10*sigma^2*s*sqrt(ln(en/s)
// + ln(m)/s). A subset counts as a violation when any row exceeds it.
struct AuditRecord {
  int n = 0;
  int m = 0;
  double sigma = 1.0;
  int subset_size = 0;
  int samples = 0;
  double max_norm_sq = 0.0;
  double bound = 0.0;
  int violations = 0;
};

struct AuditReport {
  double max_abs_entry = 0.0;
  double entry_bound = 0.0;  // 2*sigma*sqrt(ln(mn))
  int entry_violations = 0;
  std::vector<AuditRecord> records;
};

// Subset sizes run from ceil(ln m) to n, doubling. Sizes are sampled, not
// enumerated; the sample count is recorded with each row.
AuditReport audit_subvector_norms(const AuditConfig& config);

std::string audit_csv(const AuditReport& report, const AuditConfig& config);

// Shortest round-trip decimal rendering, shared by all text outputs.
std::string format_double(double v);

}  // namespace randip
