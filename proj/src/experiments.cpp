#include "randip/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace randip {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

struct TrialOutcome {
  std::vector<char> constructive;  // per R
  std::vector<char> exhaustive;    // per R, meaningful iff run_exhaustive
  int attempts = 0;
};

TrialOutcome run_trial(const SweepConfig& config, int trial) {
  const std::uint64_t base = 4ULL * static_cast<std::uint64_t>(trial);
  RngStream matrix_rng(config.seed, base);
  GaussianMatrix a = sample_gaussian_matrix(config.m, config.n, config.sigma, matrix_rng);

  std::vector<double> x0(config.n, 0.5);
  if (config.x0_mode == X0Mode::kUniform) {
    RngStream x0_rng(config.seed, base + 1);
    for (double& v : x0) v = x0_rng.next_unit();
  }

  TrialOutcome out;
  out.constructive.assign(config.r_values.size(), 0);
  out.exhaustive.assign(config.r_values.size(), 0);

  RngStream solve_rng(config.seed, base + 2);
  std::optional<std::vector<double>> zd;
  try {
    RoundingCertificate cert = round_ip(a, x0, solve_rng, config.roundip);
    out.attempts = cert.attempts;
    zd.emplace(cert.z.begin(), cert.z.end());
  } catch (const AlgorithmFailure& failure) {
    out.attempts = failure.attempts;  // walk retries exhausted: no candidate point
  }

  for (std::size_t k = 0; k < config.r_values.size(); ++k) {
    PolytopeInstance p = make_instance(a, x0, config.r_values[k]);
    const bool constructive_found = zd && contains(p, *zd);
    out.constructive[k] = constructive_found ? 1 : 0;
    if (config.run_exhaustive) {
      BoxSearchResult box = integer_feasible_exhaustive(p, config.box_k, config.guards, 1);
      out.exhaustive[k] = box.point ? 1 : 0;
      if (constructive_found && !box.point) {
        bool z_in_box = true;
        for (int j = 0; j < config.n; ++j) {
          if (std::llabs(static_cast<long long>((*zd)[j]) - std::llround(x0[j])) >
              config.box_k)
            z_in_box = false;
        }
        if (z_in_box)
          throw std::logic_error("oracle missed a point the solver verified inside the box");
      }
    }
  }
  return out;
}

}  // namespace

std::vector<SweepRecord> sweep(const SweepConfig& config) {
  if (config.r_values.empty()) throw std::invalid_argument("sweep needs at least one R value");
  if (config.trials < 1) throw std::invalid_argument("sweep needs at least one trial");
  for (double r : config.r_values) {
    if (!(r >= 0.0)) throw std::invalid_argument("R values must be nonnegative");
  }
  if (config.run_exhaustive) {
    // Fail fast before running any trials.
    double points = 1.0;
    for (int j = 0; j < config.n; ++j) points *= 2.0 * config.box_k + 1.0;
    if (points > static_cast<double>(config.guards.max_box_points))
      throw CapacityError("sweep exhaustive method exceeds the box enumeration guard");
  }

  std::vector<TrialOutcome> outcomes(config.trials);
  const int jobs = config.jobs > 0 ? config.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int t = 0; t < config.trials; ++t) outcomes[t] = run_trial(config, t);

  double mean_attempts = 0.0;
  for (const TrialOutcome& out : outcomes) mean_attempts += out.attempts;
  mean_attempts /= config.trials;

  std::vector<SweepRecord> records;
  records.reserve(config.r_values.size());
  for (std::size_t k = 0; k < config.r_values.size(); ++k) {
    SweepRecord rec;
    rec.n = config.n;
    rec.m = config.m;
    rec.sigma = config.sigma;
    rec.r = config.r_values[k];
    rec.trials = config.trials;
    rec.seed = config.seed;
    rec.mean_attempts = mean_attempts;
    for (const TrialOutcome& out : outcomes) rec.feasible_constructive += out.constructive[k];
    if (config.run_exhaustive) {
      int count = 0;
      for (const TrialOutcome& out : outcomes) count += out.exhaustive[k];
      rec.feasible_exhaustive = count;
    }
    records.push_back(rec);
  }
  return records;
}

std::string sweep_csv(std::span<const SweepRecord> records) {
  std::string out =
      "n,m,sigma,R,trials,feasible_constructive,feasible_exhaustive,mean_attempts,seed\n";
  for (const SweepRecord& rec : records) {
    out += std::to_string(rec.n) + ',' + std::to_string(rec.m) + ',' +
           format_double(rec.sigma) + ',' + format_double(rec.r) + ',' +
           std::to_string(rec.trials) + ',' + std::to_string(rec.feasible_constructive) + ',';
    if (rec.feasible_exhaustive) out += std::to_string(*rec.feasible_exhaustive);
    out += ',' + format_double(rec.mean_attempts) + ',' + std::to_string(rec.seed) + '\n';
  }
  return out;
}

std::optional<double> estimate_crossover(std::span<const SweepRecord> records) {
  if (records.empty()) throw std::invalid_argument("no records");
  for (const SweepRecord& rec : records) {
    if (rec.n != records[0].n || rec.m != records[0].m)
      throw std::invalid_argument("crossover records must share (n, m)");
  }
  std::vector<SweepRecord> sorted(records.begin(), records.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const SweepRecord& a, const SweepRecord& b) { return a.r < b.r; });

  const auto fraction = [](const SweepRecord& rec) {
    const int count =
        rec.feasible_exhaustive ? *rec.feasible_exhaustive : rec.feasible_constructive;
    return static_cast<double>(count) / rec.trials;
  };

  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double f = fraction(sorted[k]);
    if (f == 0.5) return sorted[k].r;
    if (k + 1 < sorted.size()) {
      const double g = fraction(sorted[k + 1]);
      if ((f - 0.5) * (g - 0.5) < 0.0) {
        return sorted[k].r + (0.5 - f) / (g - f) * (sorted[k + 1].r - sorted[k].r);
      }
    }
  }
  return std::nullopt;
}

AuditReport audit_subvector_norms(const AuditConfig& config) {
  if (config.n < 1 || config.m < 1) throw std::invalid_argument("n, m must be positive");
  if (!(config.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (config.samples_per_size < 1) throw std::invalid_argument("need at least one sample");

  RngStream matrix_rng(config.seed, 0);
  const GaussianMatrix a =
      sample_gaussian_matrix(config.m, config.n, config.sigma, matrix_rng);

  AuditReport report;
  report.entry_bound =
      2.0 * config.sigma *
      std::sqrt(std::log(static_cast<double>(config.m) * config.n));
  for (double e : a.entries) {
    report.max_abs_entry = std::max(report.max_abs_entry, std::abs(e));
    if (std::abs(e) > report.entry_bound) ++report.entry_violations;
  }

  std::vector<int> sizes;
  int s = std::max(1, static_cast<int>(std::ceil(std::log(static_cast<double>(config.m)))));
  while (s < config.n) {
    sizes.push_back(s);
    s *= 2;
  }
  sizes.push_back(config.n);

  std::vector<int> pool(config.n);
  for (std::size_t u = 0; u < sizes.size(); ++u) {
    const int size = sizes[u];
    AuditRecord rec;
    rec.n = config.n;
    rec.m = config.m;
    rec.sigma = config.sigma;
    rec.subset_size = size;
    rec.samples = config.samples_per_size;
    const double lambda =
        10.0 * size *
        std::sqrt(std::log(std::exp(1.0) * config.n / size) +
                  std::log(static_cast<double>(config.m)) / size);
    rec.bound = lambda * config.sigma * config.sigma;

    RngStream subset_rng(config.seed, 1000 + u);
    for (int sample = 0; sample < config.samples_per_size; ++sample) {
      std::iota(pool.begin(), pool.end(), 0);
      for (int k = 0; k < size; ++k) {
        const int swap_with =
            k + static_cast<int>(subset_rng.next_u64() % (config.n - k));
        std::swap(pool[k], pool[swap_with]);
      }
      bool violated = false;
      for (int i = 0; i < config.m; ++i) {
        const auto row = a.row(i);
        double nrm2 = 0.0;
        for (int k = 0; k < size; ++k) nrm2 += row[pool[k]] * row[pool[k]];
        rec.max_norm_sq = std::max(rec.max_norm_sq, nrm2);
        if (nrm2 > rec.bound) violated = true;
      }
      if (violated) ++rec.violations;
    }
    report.records.push_back(rec);
  }
  return report;
}

std::string audit_csv(const AuditReport& report, const AuditConfig& config) {
  std::string out = "check,n,m,sigma,s,samples,observed_max,bound,violations\n";
  out += "entry," + std::to_string(config.n) + ',' + std::to_string(config.m) + ',' +
         format_double(config.sigma) + ",,," + format_double(report.max_abs_entry) + ',' +
         format_double(report.entry_bound) + ',' + std::to_string(report.entry_violations) +
         '\n';
  for (const AuditRecord& rec : report.records) {
    out += "subvector," + std::to_string(rec.n) + ',' + std::to_string(rec.m) + ',' +
           format_double(rec.sigma) + ',' + std::to_string(rec.subset_size) + ',' +
           std::to_string(rec.samples) + ',' + format_double(rec.max_norm_sq) + ',' +
           format_double(rec.bound) + ',' + std::to_string(rec.violations) + '\n';
  }
  return out;
}

}  // namespace randip
