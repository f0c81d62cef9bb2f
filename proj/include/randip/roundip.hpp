#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "randip/edgewalk.hpp"
#include "randip/matrix.hpp"
#include "randip/model.hpp"
#include "randip/rng.hpp"

namespace randip {

// Certified envelope on the per-row overhead |A_i.(z - x0)| achieved by
// round_ip on an m x n matrix with N(0, sigma^2) entries:
//   480*sigma*(sqrt(n*ln(m/n)) + sqrt(ln(m)*ln(mn)*ln(m/ln m))).
// Requires m > n; meaningful for 2n <= m <= 2^n (see bound_in_regime).
double rounding_overhead_bound(int n, int m, double sigma);
bool bound_in_regime(int n, int m);

struct RoundIpConfig {
  // Total edge_walk attempts allowed; 0 means 200 * max(1, ceil(log2 n)).
  int max_attempts = 0;
  WalkConfig walk;
};

struct RoundingCertificate {
  std::vector<long long> z;       // z_j in {floor(x0_j), ceil(x0_j)}
  std::vector<double> overhead;   // |A_i.(z - x0)| per row
  double bound = 0.0;
  bool within_bound = false;
  int rounds = 0;    // successful walk phases
  int attempts = 0;  // total walk calls
  std::vector<int> phase_b_sizes;  // |B(x)| at each phase entry
  double delta = 0.0;
  std::vector<double> final_fractional;  // the point handed to the rounding step

  double max_overhead() const;
};

std::string certificate_to_json(const RoundingCertificate& cert);

// Walk retry cap exhausted; carries the partial statistics.
class AlgorithmFailure : public std::runtime_error {
 public:
  AlgorithmFailure(const std::string& what, int rounds, int attempts,
                   std::vector<int> phase_b_sizes)
      : std::runtime_error(what),
        rounds(rounds),
        attempts(attempts),
        phase_b_sizes(std::move(phase_b_sizes)) {}
  int rounds;
  int attempts;
  std::vector<int> phase_b_sizes;
};

// Finds an integer point z with every coordinate of x0 rounded up or down
// and certified row overheads: repeated partial-coloring walks with
// verify-and-retry, then independent randomized rounding.
RoundingCertificate round_ip(const GaussianMatrix& a, std::span<const double> x0,
                             RngStream& rng, const RoundIpConfig& config = {});

struct FindResult {
  std::optional<std::vector<long long>> point;  // set iff contains(p, z)
  RoundingCertificate certificate;
};

FindResult find_integer_point(const PolytopeInstance& p, RngStream& rng,
                              const RoundIpConfig& config = {});

}  // namespace randip
