#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "randip/matrix.hpp"
#include "randip/model.hpp"

namespace randip {

// Enumeration caps. The CLI lets environment variables raise or lower
// these; the library takes them as plain parameters.
struct EnumGuards {
  int max_disc_n = 25;                       // 2^n sign enumerations
  int max_grid_n = 12;                       // grid outer dimension
  unsigned long long max_box_points = 200'000'000ULL;   // (2K+1)^n
  unsigned long long max_grid_evals = 50'000'000ULL;    // centers * 2^n
};

struct OracleResult {
  double value = 0.0;
  std::vector<long long> witness;     // sign vector or 0/1 vector
  unsigned long long enumerated = 0;  // candidates examined
  std::vector<double> center;         // grid search only: maximizing x0
  std::string note;                   // qualifiers, e.g. lower-bound caveat
};

// Exact min over sign vectors of ||Ax||_inf, by Gray-code enumeration with
// single-coordinate updates. Global sign symmetry is factored out by fixing
// the first coordinate to -1, so 2^(n-1) candidates cover all 2^n vectors.
// disc_exact shards the candidate space over a fixed number of blocks and
// runs them with OpenMP; the serial variant is the plain full-range scan
// kept as a reference.
OracleResult disc_exact(const GaussianMatrix& a, const EnumGuards& guards = {},
                        int jobs = 0);
OracleResult disc_exact_serial(const GaussianMatrix& a, const EnumGuards& guards = {});

// Exact min over x in {0,1}^n of ||A(x - x0)||_inf for x0 in [0,1]^n.
OracleResult lindisc_at(const GaussianMatrix& a, std::span<const double> x0,
                        const EnumGuards& guards = {});

// Max of lindisc_at over the grid {0, 1/g, ..., 1}^n plus the cube center.
// A lower bound on the true maximum over the cube; result.note says so.
OracleResult lindisc_grid(const GaussianMatrix& a, int grid_resolution,
                          const EnumGuards& guards = {});

struct BoxSearchResult {
  std::optional<std::vector<long long>> point;  // lexicographic first match
  unsigned long long enumerated = 0;
  int box_k = 0;
  std::string qualifier;  // "within box +-K around round(x0)"
};

// Scans every z in Z^n with ||z - round(x0)||_inf <= K for membership in P,
// in lexicographic order. A not-found outcome certifies emptiness only
// relative to the box; the qualifier records that. The parallel variant
// shards on the leading coordinate with a deterministic merge.
BoxSearchResult integer_feasible_exhaustive(const PolytopeInstance& p, int box_k,
                                            const EnumGuards& guards = {}, int jobs = 0);
BoxSearchResult integer_feasible_exhaustive_serial(const PolytopeInstance& p, int box_k,
                                                   const EnumGuards& guards = {});

// Searches the same box around round((1/2,...,1/2)) for an integer z with
// A.(z - (1/2,...,1/2)) <= rhs componentwise.
BoxSearchResult infeasibility_shift_check(const GaussianMatrix& a, double rhs, int box_k,
                                          const EnumGuards& guards = {});

}  // namespace randip
