#include "randip/roundip.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace randip {

double rounding_overhead_bound(int n, int m, double sigma) {
  if (n < 1 || m < 1) throw std::invalid_argument("n, m must be positive");
  if (m <= n) throw std::domain_error("overhead bound requires m > n");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const double ln_ratio = std::log(static_cast<double>(m) / n);
  const double ln_m = std::log(static_cast<double>(m));
  return 480.0 * sigma *
         (std::sqrt(n * ln_ratio) +
          std::sqrt(ln_m * std::log(static_cast<double>(m) * n) * std::log(m / ln_m)));
}

bool bound_in_regime(int n, int m) {
  const bool above = m >= 2 * n;
  const bool below = (n >= 63) || (static_cast<unsigned long long>(m) <= (1ULL << n));
  return above && below;
}

double RoundingCertificate::max_overhead() const {
  double v = 0.0;
  for (double o : overhead) v = std::max(v, o);
  return v;
}

std::string certificate_to_json(const RoundingCertificate& cert) {
  nlohmann::json doc;
  doc["z"] = cert.z;
  doc["overhead_max"] = cert.max_overhead();
  doc["bound"] = cert.bound;
  doc["within_bound"] = cert.within_bound;
  doc["rounds"] = cert.rounds;
  doc["attempts"] = cert.attempts;
  doc["phase_B_sizes"] = cert.phase_b_sizes;
  return doc.dump(2) + "\n";
}

namespace {

double phase_coefficient(int m, int active_count) {
  // The schedule 8*sqrt(ln(m/|B|)) with the log argument clamped below at
  // 16e, which keeps sum_i exp(-c^2/16) <= |B|/16 in every regime.
  const double ratio = std::max(static_cast<double>(m) / active_count, 16.0 * std::exp(1.0));
  return 8.0 * std::sqrt(std::log(ratio));
}

}  // namespace

RoundingCertificate round_ip(const GaussianMatrix& a, std::span<const double> x0,
                             RngStream& rng, const RoundIpConfig& config) {
  const int m = a.rows;
  const int n = a.cols;
  if (m < 2) throw std::invalid_argument("round_ip requires at least two rows");
  if (n < 1) throw std::invalid_argument("round_ip requires at least one column");
  if (static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("x0 length does not match matrix columns");

  const double delta =
      std::clamp(1.0 / (8.0 * std::log(static_cast<double>(m))), 0x1.0p-20, 0.5);

  // Fractional part via floor, so negative coordinates land in [0,1) too.
  std::vector<double> x(n);
  for (int j = 0; j < n; ++j) x[j] = x0[j] - std::floor(x0[j]);
  PartialColoringState state = make_state(std::move(x), delta);

  const int log2n = static_cast<int>(std::ceil(std::log2(std::max(n, 2))));
  const int max_attempts =
      config.max_attempts > 0 ? config.max_attempts : 200 * std::max(1, log2n);

  RoundingCertificate cert;
  cert.delta = delta;

  while (!state.active.empty()) {
    const int b_size = static_cast<int>(state.active.size());
    cert.phase_b_sizes.push_back(b_size);
    WalkBudget budget;
    budget.c.assign(m, phase_coefficient(m, b_size));
    budget.max_retries = max_attempts;

    bool advanced = false;
    while (!advanced) {
      if (cert.attempts >= max_attempts) {
        throw AlgorithmFailure("round_ip exceeded the walk retry cap of " +
                                   std::to_string(max_attempts),
                               cert.rounds, cert.attempts, cert.phase_b_sizes);
      }
      ++cert.attempts;
      WalkAttempt attempt = edge_walk(state, a, budget, rng, config.walk);
      if (attempt.success) {
        state = std::move(attempt.y);
        ++cert.rounds;
        advanced = true;
      }
    }
  }

  cert.final_fractional = state.x;
  cert.z.resize(n);
  std::vector<double> zd(n);
  for (int j = 0; j < n; ++j) {
    const double up = std::ceil(x0[j]);
    const double down = std::floor(x0[j]);
    cert.z[j] = static_cast<long long>(rng.next_unit() < state.x[j] ? up : down);
    zd[j] = static_cast<double>(cert.z[j]) - x0[j];
  }
  cert.overhead.resize(m);
  for (int i = 0; i < m; ++i) cert.overhead[i] = std::abs(dot(a.row(i), zd));

  cert.bound = rounding_overhead_bound(n, m, a.sigma);
  cert.within_bound = cert.max_overhead() <= cert.bound;
  return cert;
}

FindResult find_integer_point(const PolytopeInstance& p, RngStream& rng,
                              const RoundIpConfig& config) {
  FindResult result;
  result.certificate = round_ip(p.a, p.x0, rng, config);
  std::vector<double> zd(result.certificate.z.begin(), result.certificate.z.end());
  if (contains(p, zd)) result.point = result.certificate.z;
  return result;
}

}  // namespace randip
