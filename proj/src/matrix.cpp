#include "randip/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace randip {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

GaussianMatrix sample_gaussian_matrix(int m, int n, double sigma, RngStream& rng,
                                      std::size_t max_entries) {
  if (m < 1 || n < 1) throw std::invalid_argument("matrix dimensions must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const std::size_t count = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
  if (count > max_entries) {
    throw CapacityError("matrix entry count " + std::to_string(count) +
                        " exceeds cap " + std::to_string(max_entries));
  }
  GaussianMatrix a;
  a.rows = m;
  a.cols = n;
  a.sigma = sigma;
  a.seed = rng.seed();
  a.stream = rng.stream();
  a.entries.resize(count);
  for (double& e : a.entries) e = sigma * rng.next_gaussian();
  return a;
}

double row_norm(const GaussianMatrix& a, int i) {
  if (i < 0 || i >= a.rows) throw std::out_of_range("row index out of range");
  return norm(a.row(i));
}

double restricted_norm(const GaussianMatrix& a, int i, std::span<const int> subset) {
  if (i < 0 || i >= a.rows) throw std::out_of_range("row index out of range");
  std::vector<char> seen(a.cols, 0);
  const auto r = a.row(i);
  double s = 0.0;
  for (int j : subset) {
    if (j < 0 || j >= a.cols) throw std::out_of_range("subset index out of range");
    if (seen[j]) throw std::invalid_argument("duplicate index in subset");
    seen[j] = 1;
    s += r[j] * r[j];
  }
  return std::sqrt(s);
}

namespace {

// One orthogonal-complement sweep against an orthonormal set.
void sweep(std::vector<double>& v, const std::vector<std::vector<double>>& q) {
  for (const auto& u : q) {
    double c = dot(v, u);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * u[k];
  }
}

}  // namespace

std::vector<double> project_out(std::span<const double> v,
                                const std::vector<std::vector<double>>& basis) {
  std::vector<double> result(v.begin(), v.end());
  if (basis.empty()) return result;

  // Orthonormalize the basis, skipping zero and dependent vectors.
  std::vector<std::vector<double>> q;
  q.reserve(basis.size());
  for (const auto& b : basis) {
    if (b.size() != v.size()) throw std::invalid_argument("basis dimension mismatch");
    const double bn = norm(b);
    if (bn == 0.0) continue;
    std::vector<double> w(b);
    sweep(w, q);
    sweep(w, q);
    const double wn = norm(w);
    if (wn <= 1e-12 * bn) continue;  // dependent
    for (double& x : w) x /= wn;
    q.push_back(std::move(w));
  }

  sweep(result, q);
  sweep(result, q);
  return result;
}

}  // namespace randip
