// Timings for the enumeration kernels and the trial sweep, serial reference
// vs OpenMP. Build with the default toolchain and run directly:
//   ./randip_bench [repeats]

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "randip/experiments.hpp"
#include "randip/oracle.hpp"

using namespace randip;

namespace {

double time_once(const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double best_of(int repeats, const std::function<void()>& body) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) best = std::min(best, time_once(body));
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s %10.3fs %10.3fs %7.2fx %s\n", name, serial, parallel,
              serial / parallel, same ? "results match" : "RESULTS DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  const int threads = omp_get_max_threads();
  std::printf("threads available: %d, best of %d runs\n\n", threads, repeats);
  std::printf("%-28s %11s %11s %8s\n", "kernel", "serial", "openmp", "speedup");

  {
    RngStream rng(1, 0);
    const GaussianMatrix a = sample_gaussian_matrix(24, 22, 1.0, rng);
    OracleResult serial_result, parallel_result;
    const double serial =
        best_of(repeats, [&] { serial_result = disc_exact_serial(a); });
    const double parallel = best_of(repeats, [&] { parallel_result = disc_exact(a); });
    const bool same =
        std::abs(serial_result.value - parallel_result.value) <= 1e-12 &&
        serial_result.witness == parallel_result.witness;
    row("disc enumeration n=22", serial, parallel, same);
  }

  {
    RngStream rng(2, 0);
    const GaussianMatrix a = sample_gaussian_matrix(1000, 8, std::sqrt(1.0 / 8.0), rng);
    const PolytopeInstance p = make_instance(a, std::vector<double>(8, 0.5), 0.4);
    BoxSearchResult serial_result, parallel_result;
    const double serial = best_of(
        repeats, [&] { serial_result = integer_feasible_exhaustive_serial(p, 3); });
    const double parallel =
        best_of(repeats, [&] { parallel_result = integer_feasible_exhaustive(p, 3); });
    const bool same =
        serial_result.point.has_value() == parallel_result.point.has_value();
    row("box search 7^8 infeasible", serial, parallel, same);
  }

  {
    SweepConfig config;
    config.n = 24;
    config.m = 96;
    config.sigma = 1.0;
    config.trials = 64;
    config.seed = 3;
    config.x0_mode = X0Mode::kUniform;
    config.r_values = {0.5, 1.0, 2.0};
    std::string serial_csv, parallel_csv;
    config.jobs = 1;
    const double serial =
        best_of(repeats, [&] { serial_csv = sweep_csv(sweep(config)); });
    config.jobs = threads;
    const double parallel =
        best_of(repeats, [&] { parallel_csv = sweep_csv(sweep(config)); });
    row("sweep 64 trials n=24 m=96", serial, parallel, serial_csv == parallel_csv);
  }

  return 0;
}
