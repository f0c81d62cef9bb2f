#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "randip/matrix.hpp"

namespace randip {

// Random polytope {x : Ax <= b} with b_i = R*||A_i|| + A_i.x0, i.e. every
// facet at distance R from the center x0.
struct PolytopeInstance {
  GaussianMatrix a;
  std::vector<double> x0;
  double radius = 0.0;
  std::vector<double> b;          // derived
  std::vector<double> row_norms;  // cached ||A_i||
  bool explicit_entries = false;  // entries supplied rather than regenerated
};

PolytopeInstance make_instance(GaussianMatrix a, std::vector<double> x0, double radius);

// Membership with slack 1e-9*(1+|b_i|) per row.
bool contains(const PolytopeInstance& p, std::span<const double> x);

// min_i (b_i - A_i.c)/||A_i||; negative when c lies outside.
double inscribed_radius_at(const PolytopeInstance& p, std::span<const double> c);

struct Thresholds {
  double r0 = 0.0;
  double r1 = 0.0;
  bool in_regime = false;  // 1000n <= m <= 2^n
};

// r0 = sqrt(ln(m/n)/6),
// r1 = 960*(sqrt(ln(m/n)) + sqrt(ln(m)*ln(mn)*ln(m/ln m)/n)).
// Natural logarithms throughout. Requires m > n.
Thresholds thresholds(int n, int m);

// Each row scaled to unit norm; second element holds the original norms.
std::pair<GaussianMatrix, std::vector<double>> normalize_rows(const GaussianMatrix& a);

// Instance files are a single JSON document:
//   {"n", "m", "sigma", "seed", "stream", "x0": [...], "R"}
// A's entries are regenerated from (seed, stream) on load unless an
// optional "entries" array (row-major) supplies them explicitly.
void save_instance(const PolytopeInstance& p, const std::filesystem::path& path);
std::string instance_to_json(const PolytopeInstance& p);
PolytopeInstance load_instance(const std::filesystem::path& path,
                               std::size_t max_entries = kDefaultMatrixEntryCap);
PolytopeInstance parse_instance(const std::string& text,
                                std::size_t max_entries = kDefaultMatrixEntryCap);

}  // namespace randip
