#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "randip/rng.hpp"

namespace randip {

// Thrown when an enumeration or allocation request exceeds a configured
// guard. The CLI maps this to its own exit code.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMatrixEntryCap = 100'000'000;

// Dense row-major matrix with i.i.d. N(0, sigma^2) entries and the
// (seed, stream) provenance needed to regenerate it bit-for-bit.
struct GaussianMatrix {
  int rows = 0;
  int cols = 0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<double> entries;  // rows*cols, row-major

  double operator()(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * cols + j];
  }
  std::span<const double> row(int i) const {
    return {entries.data() + static_cast<std::size_t>(i) * cols,
            static_cast<std::size_t>(cols)};
  }
};

GaussianMatrix sample_gaussian_matrix(int m, int n, double sigma, RngStream& rng,
                                      std::size_t max_entries = kDefaultMatrixEntryCap);

// Euclidean norm of row i.
double row_norm(const GaussianMatrix& a, int i);

// Euclidean norm of row i restricted to the coordinates in `subset`.
// Rejects duplicate or out-of-range indices.
double restricted_norm(const GaussianMatrix& a, int i, std::span<const int> subset);

// Component of v orthogonal to span(basis), via two Gram-Schmidt sweeps.
// Zero (and linearly dependent) basis vectors are skipped.
std::vector<double> project_out(std::span<const double> v,
                                const std::vector<std::vector<double>>& basis);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> v);

}  // namespace randip
