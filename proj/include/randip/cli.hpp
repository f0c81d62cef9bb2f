#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "randip/oracle.hpp"

namespace randip::cli {

// Stable exit-code contract.
inline constexpr int kExitFound = 0;
inline constexpr int kExitNotFound = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitAlgorithmFailure = 3;
inline constexpr int kExitCapacity = 4;

// Capacity guards may be overridden through RANDIP_MAX_DISC_N,
// RANDIP_MAX_GRID_N, RANDIP_MAX_BOX_POINTS, RANDIP_MAX_GRID_EVALS and
// RANDIP_MAX_MATRIX_ENTRIES. Seeds are never read from the environment.
EnumGuards guards_from_env();
std::size_t matrix_entry_cap_from_env();

struct GenOptions {
  int n = 0;
  int m = 0;
  double sigma = 1.0;
  double radius = 0.0;
  std::string x0_mode = "half";  // half | uniform
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;
  bool thresholds_requested = false;  // fail loudly when m <= n
};

struct SolveOptions {
  std::string instance;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::string out;  // optional; stdout always gets the result
};

struct OracleOptions {
  std::string instance;
  std::string mode = "disc";  // disc | lindisc | grid | feasible | shift
  int box_k = 3;
  int grid_resolution = 2;
  double rhs = 0.0;
  int jobs = 0;
  std::string out;
};

struct SweepOptions {
  int n = 0;
  int m = 0;
  double sigma = 1.0;
  std::string r_list;     // comma-separated absolute radii
  std::string r_factors;  // comma-separated multiples of r0(n, m)
  int trials = 1;
  std::uint64_t seed = 0;
  std::string x0_mode = "half";
  bool exhaustive = false;
  int box_k = 3;
  int jobs = 0;
  std::string out;
};

struct AuditOptions {
  int n = 0;
  int m = 0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  int samples_per_size = 200;
  std::string out;
};

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);
int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);
int cmd_audit(const AuditOptions& options, std::ostream& out, std::ostream& err);

}  // namespace randip::cli
