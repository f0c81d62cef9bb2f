#include "randip/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace randip {

PolytopeInstance make_instance(GaussianMatrix a, std::vector<double> x0, double radius) {
  if (static_cast<int>(x0.size()) != a.cols)
    throw std::invalid_argument("x0 length does not match matrix columns");
  if (radius < 0.0) throw std::invalid_argument("radius must be nonnegative");

  PolytopeInstance p;
  p.row_norms.resize(a.rows);
  p.b.resize(a.rows);
  for (int i = 0; i < a.rows; ++i) {
    const double nrm = row_norm(a, i);
    if (nrm == 0.0)
      throw std::invalid_argument("degenerate all-zero constraint row " + std::to_string(i));
    p.row_norms[i] = nrm;
    p.b[i] = radius * nrm + dot(a.row(i), x0);
  }
  p.a = std::move(a);
  p.x0 = std::move(x0);
  p.radius = radius;
  return p;
}

bool contains(const PolytopeInstance& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.a.cols)
    throw std::invalid_argument("point length does not match instance dimension");
  for (int i = 0; i < p.a.rows; ++i) {
    const double lhs = dot(p.a.row(i), x);
    if (lhs > p.b[i] + 1e-9 * (1.0 + std::abs(p.b[i]))) return false;
  }
  return true;
}

double inscribed_radius_at(const PolytopeInstance& p, std::span<const double> c) {
  if (static_cast<int>(c.size()) != p.a.cols)
    throw std::invalid_argument("point length does not match instance dimension");
  double r = std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.a.rows; ++i) {
    r = std::min(r, (p.b[i] - dot(p.a.row(i), c)) / p.row_norms[i]);
  }
  return r;
}

Thresholds thresholds(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("n, m must be positive");
  if (m <= n) throw std::domain_error("thresholds require m > n");
  const double ln_ratio = std::log(static_cast<double>(m) / n);
  const double ln_m = std::log(static_cast<double>(m));
  Thresholds t;
  t.r0 = std::sqrt(ln_ratio / 6.0);
  t.r1 = 960.0 * (std::sqrt(ln_ratio) +
                  std::sqrt(ln_m * std::log(static_cast<double>(m) * n) *
                            std::log(m / ln_m) / n));
  const bool above = static_cast<long long>(m) >= 1000LL * n;
  const bool below = (n >= 63) || (static_cast<unsigned long long>(m) <= (1ULL << n));
  t.in_regime = above && below;
  return t;
}

std::pair<GaussianMatrix, std::vector<double>> normalize_rows(const GaussianMatrix& a) {
  GaussianMatrix u = a;
  std::vector<double> norms(a.rows);
  for (int i = 0; i < a.rows; ++i) {
    const double nrm = row_norm(a, i);
    if (nrm == 0.0) throw std::invalid_argument("cannot normalize all-zero row");
    norms[i] = nrm;
    double* r = u.entries.data() + static_cast<std::size_t>(i) * u.cols;
    for (int j = 0; j < u.cols; ++j) r[j] /= nrm;
  }
  return {std::move(u), std::move(norms)};
}

std::string instance_to_json(const PolytopeInstance& p) {
  nlohmann::json doc;
  doc["n"] = p.a.cols;
  doc["m"] = p.a.rows;
  doc["sigma"] = p.a.sigma;
  doc["seed"] = p.a.seed;
  doc["stream"] = p.a.stream;
  doc["x0"] = p.x0;
  doc["R"] = p.radius;
  if (p.explicit_entries) doc["entries"] = p.a.entries;
  return doc.dump(2) + "\n";
}

void save_instance(const PolytopeInstance& p, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << instance_to_json(p);
}

PolytopeInstance parse_instance(const std::string& text, std::size_t max_entries) {
  nlohmann::json doc = nlohmann::json::parse(text);  // throws on malformed input
  const int n = doc.at("n").get<int>();
  const int m = doc.at("m").get<int>();
  const double sigma = doc.at("sigma").get<double>();
  std::vector<double> x0 = doc.at("x0").get<std::vector<double>>();
  const double radius = doc.at("R").get<double>();
  if (n < 1 || m < 1) throw std::invalid_argument("instance has nonpositive dimensions");
  if (static_cast<int>(x0.size()) != n)
    throw std::invalid_argument("x0 length does not match n");

  GaussianMatrix a;
  bool explicit_entries = false;
  if (doc.contains("entries")) {
    a.rows = m;
    a.cols = n;
    a.sigma = sigma;
    a.seed = doc.value("seed", 0ULL);
    a.stream = doc.value("stream", 0ULL);
    a.entries = doc.at("entries").get<std::vector<double>>();
    if (a.entries.size() != static_cast<std::size_t>(m) * n)
      throw std::invalid_argument("entries array has wrong length");
    for (double e : a.entries)
      if (!std::isfinite(e)) throw std::invalid_argument("non-finite matrix entry");
    explicit_entries = true;
  } else {
    RngStream rng(doc.at("seed").get<std::uint64_t>(), doc.at("stream").get<std::uint64_t>());
    a = sample_gaussian_matrix(m, n, sigma, rng, max_entries);
  }
  PolytopeInstance p = make_instance(std::move(a), std::move(x0), radius);
  p.explicit_entries = explicit_entries;
  return p;
}

PolytopeInstance load_instance(const std::filesystem::path& path, std::size_t max_entries) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), max_entries);
}

}  // namespace randip
