#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "randip/matrix.hpp"
#include "randip/rng.hpp"

namespace randip {

// Caller broke an entry condition of the walk (bad budget, empty active set).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Point in [0,1]^n with its tolerance band and the set of coordinates that
// are still free to move: B(x) = {j : delta < x_j < 1 - delta}.
struct PartialColoringState {
  std::vector<double> x;
  double delta = 0.0;
  std::vector<int> active;  // ascending, always equals active_set(x, delta)
};

std::vector<int> active_set(std::span<const double> x, double delta);
PartialColoringState make_state(std::vector<double> x, double delta);

// Per-row overhead coefficients. The walk requires
//   sum_i exp(-c_i^2/16) <= |B(x)|/16
// at entry; budget_feasible checks exactly that.
struct WalkBudget {
  std::vector<double> c;
  int max_retries = 100;
};

bool budget_feasible(const WalkBudget& budget, int active_count);

// Step schedule. Each step has fixed length gamma = coord_step_fraction *
// delta * sqrt(|B(x)|), giving every active coordinate a per-step standard
// deviation of roughly coord_step_fraction * delta. The walk runs until the
// active set has halved (early exit) or the per-coordinate variance budget
// is exhausted: T = ceil(variance_budget / (coord_step_fraction*delta)^2).
struct WalkConfig {
  double coord_step_fraction = 0.25;
  double variance_budget = 16.0;
  bool early_exit = true;
  std::uint64_t max_steps_cap = 200'000'000;
};

struct WalkStats {
  std::uint64_t steps = 0;
  int constraints_hit = 0;
  int clamp_count = 0;
  int entry_active = 0;
  int exit_active = 0;
  double gamma = 0.0;
};

struct WalkAttempt {
  bool success = false;
  PartialColoringState y;  // valid only on success
  WalkStats stats;
};

// One walk attempt. On success the returned point y satisfies, verified:
//   1. |A_i.(y - x)| <= c_i * ||A_i restricted to B(x)||  for all i,
//   2. |B(y)| <= |B(x)|/2,
//   3. y_j = x_j exactly for j outside B(x),
//   4. y in [0,1]^n.
// Failure carries statistics only; the caller owns the retry policy.
WalkAttempt edge_walk(const PartialColoringState& state, const GaussianMatrix& a,
                      const WalkBudget& budget, RngStream& rng,
                      const WalkConfig& config = {});

struct RowSlack {
  int row = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct VerifyReport {
  bool ok = false;
  bool overhead_ok = false;   // condition 1
  bool halving_ok = false;    // condition 2
  bool frozen_ok = false;     // condition 3
  int active_before = 0;
  int active_after = 0;
  std::vector<RowSlack> violating_rows;     // condition 1 offenders
  std::vector<int> violating_coordinates;   // condition 3 offenders
  std::string failure;                      // empty when ok
};

// Checks conditions 1-3 above; condition 1 with 1e-9 relative tolerance.
VerifyReport verify_partial(const PartialColoringState& x, const PartialColoringState& y,
                            const GaussianMatrix& a, const WalkBudget& budget);

}  // namespace randip
