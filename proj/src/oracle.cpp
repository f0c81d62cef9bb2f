#include "randip/oracle.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace randip {

namespace {

int resolve_jobs(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

double inf_norm(std::span<const double> r) {
  double v = 0.0;
  for (double x : r) v = std::max(v, std::abs(x));
  return v;
}

// Column-major copy so single-coordinate updates touch contiguous memory.
struct Columns {
  int m, n;
  std::vector<double> data;  // n * m

  explicit Columns(const GaussianMatrix& a) : m(a.rows), n(a.cols), data(a.entries.size()) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        data[static_cast<std::size_t>(j) * m + i] = a(i, j);
  }
  const double* col(int j) const { return data.data() + static_cast<std::size_t>(j) * m; }
};

struct BestCandidate {
  double value = std::numeric_limits<double>::infinity();
  std::vector<long long> witness;
};

// Incremental-update drift is kept below 1e-13 by recomputing the row sums
// from scratch every kRefreshPeriod candidates.
constexpr std::uint64_t kRefreshPeriod = 1ULL << 18;

void recompute_signed(const Columns& cols, const std::vector<double>& x,
                      std::vector<double>& r) {
  std::fill(r.begin(), r.end(), 0.0);
  for (int j = 0; j < cols.n; ++j) {
    const double* c = cols.col(j);
    const double xj = x[j];
    for (int i = 0; i < cols.m; ++i) r[i] += xj * c[i];
  }
}

// Gray-code scan over the free coordinates, x already initialized (+-1).
// Accumulates locally and writes the outputs once, so concurrent shards do
// not share cache lines.
void disc_scan(const Columns& cols, std::vector<double> x,
               const std::vector<int>& free_coords, BestCandidate& best_out,
               unsigned long long& examined_out) {
  BestCandidate best;
  unsigned long long examined = 0;
  std::vector<double> r(cols.m);
  recompute_signed(cols, x, r);
  const auto consider = [&] {
    ++examined;
    const double v = inf_norm(r);
    if (v < best.value) {
      best.value = v;
      best.witness.assign(x.size(), 0);
      for (std::size_t j = 0; j < x.size(); ++j) best.witness[j] = x[j] > 0 ? 1 : -1;
    }
  };
  consider();
  const std::uint64_t total = 1ULL << free_coords.size();
  for (std::uint64_t i = 1; i < total; ++i) {
    if ((i & (kRefreshPeriod - 1)) == 0) recompute_signed(cols, x, r);
    const int j = free_coords[std::countr_zero(i)];
    x[j] = -x[j];
    const double step = 2.0 * x[j];
    const double* c = cols.col(j);
    for (int row = 0; row < cols.m; ++row) r[row] += step * c[row];
    consider();
  }
  best_out = std::move(best);
  examined_out = examined;
}

OracleResult disc_exact_impl(const GaussianMatrix& a, const EnumGuards& guards,
                             int shard_bits, int jobs) {
  if (a.cols < 1 || a.rows < 1) throw std::invalid_argument("empty matrix");
  if (a.cols > guards.max_disc_n)
    throw CapacityError("disc enumeration guard: n = " + std::to_string(a.cols) +
                        " exceeds " + std::to_string(guards.max_disc_n));

  const int n = a.cols;
  const int k = n - 1;  // coordinate 0 pinned to -1 (global sign symmetry)
  const int t = std::min(k, shard_bits);
  const int shard_count = 1 << t;
  const Columns cols(a);

  std::vector<BestCandidate> best(shard_count);
  std::vector<unsigned long long> counts(shard_count, 0);

  std::vector<int> free_coords;
  for (int j = 1; j < n - t; ++j) free_coords.push_back(j);

#pragma omp parallel for schedule(dynamic) num_threads(resolve_jobs(jobs))
  for (int s = 0; s < shard_count; ++s) {
    std::vector<double> x(n, -1.0);
    for (int b = 0; b < t; ++b) {
      if ((s >> b) & 1) x[n - t + b] = 1.0;
    }
    disc_scan(cols, std::move(x), free_coords, best[s], counts[s]);
  }

  OracleResult result;
  BestCandidate merged;
  for (int s = 0; s < shard_count; ++s) {
    result.enumerated += counts[s];
    if (best[s].value < merged.value) merged = best[s];
  }
  result.value = merged.value;
  result.witness = std::move(merged.witness);
  return result;
}

}  // namespace

OracleResult disc_exact(const GaussianMatrix& a, const EnumGuards& guards, int jobs) {
  return disc_exact_impl(a, guards, 6, jobs);
}

OracleResult disc_exact_serial(const GaussianMatrix& a, const EnumGuards& guards) {
  if (a.cols < 1 || a.rows < 1) throw std::invalid_argument("empty matrix");
  if (a.cols > guards.max_disc_n)
    throw CapacityError("disc enumeration guard: n = " + std::to_string(a.cols) +
                        " exceeds " + std::to_string(guards.max_disc_n));
  const Columns cols(a);
  std::vector<int> free_coords;
  for (int j = 1; j < a.cols; ++j) free_coords.push_back(j);
  OracleResult result;
  BestCandidate best;
  disc_scan(cols, std::vector<double>(a.cols, -1.0), free_coords, best, result.enumerated);
  result.value = best.value;
  result.witness = std::move(best.witness);
  return result;
}

OracleResult lindisc_at(const GaussianMatrix& a, std::span<const double> x0,
                        const EnumGuards& guards) {
  const int n = a.cols;
  const int m = a.rows;
  if (static_cast<int>(x0.size()) != n) throw std::invalid_argument("x0 length mismatch");
  if (n > guards.max_disc_n)
    throw CapacityError("0/1 enumeration guard: n = " + std::to_string(n) + " exceeds " +
                        std::to_string(guards.max_disc_n));
  for (double v : x0) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("x0 must lie in the unit cube");
  }

  const Columns cols(a);
  std::vector<long long> x(n, 0);
  std::vector<double> r(m, 0.0);
  const auto recompute = [&] {
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      const auto row = a.row(i);
      for (int j = 0; j < n; ++j) s += row[j] * (static_cast<double>(x[j]) - x0[j]);
      r[i] = s;
    }
  };
  recompute();

  OracleResult result;
  result.value = std::numeric_limits<double>::infinity();
  const auto consider = [&] {
    ++result.enumerated;
    const double v = inf_norm(r);
    if (v < result.value) {
      result.value = v;
      result.witness = x;
    }
  };
  consider();
  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    if ((i & (kRefreshPeriod - 1)) == 0) recompute();
    const int j = std::countr_zero(i);
    x[j] = 1 - x[j];
    const double step = x[j] ? 1.0 : -1.0;
    const double* c = cols.col(j);
    for (int row = 0; row < m; ++row) r[row] += step * c[row];
    consider();
  }
  return result;
}

OracleResult lindisc_grid(const GaussianMatrix& a, int grid_resolution,
                          const EnumGuards& guards) {
  const int n = a.cols;
  if (grid_resolution < 1) throw std::invalid_argument("grid resolution must be positive");
  if (n > guards.max_grid_n)
    throw CapacityError("grid guard: n = " + std::to_string(n) + " exceeds " +
                        std::to_string(guards.max_grid_n));

  double centers = 1.0;
  for (int j = 0; j < n; ++j) centers *= grid_resolution + 1;
  const double evals = (centers + 1.0) * std::ldexp(1.0, n);
  if (evals > static_cast<double>(guards.max_grid_evals))
    throw CapacityError("grid guard: " + std::to_string(evals) + " candidate evaluations");

  OracleResult result;
  result.value = -1.0;
  std::vector<double> x0(n, 0.0);
  std::vector<int> idx(n, 0);

  const auto consider_center = [&] {
    OracleResult inner = lindisc_at(a, x0, guards);
    result.enumerated += inner.enumerated;
    if (inner.value > result.value) {
      result.value = inner.value;
      result.witness = std::move(inner.witness);
      result.center = x0;
    }
  };

  bool done = false;
  while (!done) {
    for (int j = 0; j < n; ++j) x0[j] = static_cast<double>(idx[j]) / grid_resolution;
    consider_center();
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == grid_resolution) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) {
      done = true;
    } else {
      ++idx[pos];
    }
  }
  std::fill(x0.begin(), x0.end(), 0.5);
  consider_center();

  result.note = "lower bound on the cube-wide maximum (grid resolution " +
                std::to_string(grid_resolution) + " plus the cube center)";
  return result;
}

namespace {

unsigned long long box_point_count(int n, int box_k, unsigned long long cap) {
  unsigned long long count = 1;
  const unsigned long long side = 2ULL * box_k + 1;
  for (int j = 0; j < n; ++j) {
    if (count > cap / side + 1) return cap + 1;
    count *= side;
  }
  return count;
}

std::string box_qualifier(int box_k, const std::string& center_desc) {
  return "within box ±" + std::to_string(box_k) + " around " + center_desc;
}

// Lexicographic odometer scan over {-K..K}^d applied to base; returns the
// first point accepted by `test`.
template <typename Test>
void box_scan(const std::vector<long long>& base, int box_k, const Test& test,
              std::optional<std::vector<long long>>& found, unsigned long long& examined) {
  const int d = static_cast<int>(base.size());
  std::vector<int> off(d, -box_k);
  std::vector<long long> z(d);
  bool done = false;
  while (!done) {
    for (int j = 0; j < d; ++j) z[j] = base[j] + off[j];
    ++examined;
    if (test(z)) {
      found = z;
      return;
    }
    int pos = d - 1;
    while (pos >= 0 && off[pos] == box_k) {
      off[pos] = -box_k;
      --pos;
    }
    if (pos < 0) {
      done = true;
    } else {
      ++off[pos];
    }
  }
}

std::vector<long long> rounded_center(std::span<const double> x0) {
  std::vector<long long> c(x0.size());
  for (std::size_t j = 0; j < x0.size(); ++j) c[j] = std::llround(x0[j]);
  return c;
}

}  // namespace

BoxSearchResult integer_feasible_exhaustive(const PolytopeInstance& p, int box_k,
                                            const EnumGuards& guards, int jobs) {
  const int n = p.a.cols;
  if (box_k < 0) throw std::invalid_argument("box radius must be nonnegative");
  if (box_point_count(n, box_k, guards.max_box_points) > guards.max_box_points)
    throw CapacityError("box enumeration guard: (2K+1)^n exceeds " +
                        std::to_string(guards.max_box_points));

  BoxSearchResult result;
  result.box_k = box_k;
  result.qualifier = box_qualifier(box_k, "round(x0)");
  const std::vector<long long> center = rounded_center(p.x0);

  if (n == 1) {
    box_scan(center, box_k,
             [&](const std::vector<long long>& z) {
               const double zd = static_cast<double>(z[0]);
               return contains(p, std::span<const double>(&zd, 1));
             },
             result.point, result.enumerated);
    return result;
  }

  // One shard per value of the leading coordinate. Every shard scans to its
  // own first hit (or exhaustion), so the merged outcome and the examined
  // count are independent of scheduling.
  const int shard_count = 2 * box_k + 1;
  std::vector<std::optional<std::vector<long long>>> found(shard_count);
  std::vector<unsigned long long> counts(shard_count, 0);
  const std::vector<long long> tail_center(center.begin() + 1, center.end());

#pragma omp parallel for schedule(dynamic) num_threads(resolve_jobs(jobs))
  for (int s = 0; s < shard_count; ++s) {
    const long long z0 = center[0] - box_k + s;
    std::vector<double> buf(n);
    buf[0] = static_cast<double>(z0);
    std::optional<std::vector<long long>> local;
    unsigned long long examined = 0;
    box_scan(tail_center, box_k,
             [&](const std::vector<long long>& tail) {
               for (int j = 1; j < n; ++j) buf[j] = static_cast<double>(tail[j - 1]);
               return contains(p, buf);
             },
             local, examined);
    counts[s] = examined;
    if (local) {
      std::vector<long long> z(n);
      z[0] = z0;
      std::copy(local->begin(), local->end(), z.begin() + 1);
      found[s] = std::move(z);
    }
  }

  for (int s = 0; s < shard_count; ++s) {
    result.enumerated += counts[s];
    if (!result.point && found[s]) result.point = found[s];
  }
  return result;
}

BoxSearchResult integer_feasible_exhaustive_serial(const PolytopeInstance& p, int box_k,
                                                   const EnumGuards& guards) {
  const int n = p.a.cols;
  if (box_k < 0) throw std::invalid_argument("box radius must be nonnegative");
  if (box_point_count(n, box_k, guards.max_box_points) > guards.max_box_points)
    throw CapacityError("box enumeration guard: (2K+1)^n exceeds " +
                        std::to_string(guards.max_box_points));

  BoxSearchResult result;
  result.box_k = box_k;
  result.qualifier = box_qualifier(box_k, "round(x0)");
  std::vector<double> buf(n);
  box_scan(rounded_center(p.x0), box_k,
           [&](const std::vector<long long>& z) {
             for (int j = 0; j < n; ++j) buf[j] = static_cast<double>(z[j]);
             return contains(p, buf);
           },
           result.point, result.enumerated);
  return result;
}

BoxSearchResult infeasibility_shift_check(const GaussianMatrix& a, double rhs, int box_k,
                                          const EnumGuards& guards) {
  const int n = a.cols;
  if (box_k < 0) throw std::invalid_argument("box radius must be nonnegative");
  if (n > guards.max_grid_n)
    throw CapacityError("shift-check guard: n = " + std::to_string(n) + " exceeds " +
                        std::to_string(guards.max_grid_n));
  if (box_point_count(n, box_k, guards.max_box_points) > guards.max_box_points)
    throw CapacityError("box enumeration guard: (2K+1)^n exceeds " +
                        std::to_string(guards.max_box_points));

  BoxSearchResult result;
  result.box_k = box_k;
  result.qualifier = box_qualifier(box_k, "round((1/2,...,1/2))");
  const double slack = 1e-9 * (1.0 + std::abs(rhs));
  // Integer z automatically keeps |z_j - 1/2| >= 1/2 in every coordinate.
  std::vector<long long> center(n, std::llround(0.5));
  std::vector<double> shifted(n);
  box_scan(center, box_k,
           [&](const std::vector<long long>& z) {
             for (int j = 0; j < n; ++j) shifted[j] = static_cast<double>(z[j]) - 0.5;
             for (int i = 0; i < a.rows; ++i) {
               if (dot(a.row(i), shifted) > rhs + slack) return false;
             }
             return true;
           },
           result.point, result.enumerated);
  return result;
}

}  // namespace randip
