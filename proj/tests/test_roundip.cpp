#include <cmath>
#include <vector>

#include "doctest.h"
#include "randip/roundip.hpp"

using namespace randip;

TEST_CASE("overhead bound: pinned value, linearity in sigma, domain errors") {
  // Direct evaluation of 480*(sqrt(64*ln 4) + sqrt(ln 256 * ln 16384 * ln(256/ln 256))).
  CHECK(rounding_overhead_bound(64, 256, 1.0) ==
        doctest::Approx(11414.163717267642).epsilon(1e-12));
  CHECK(rounding_overhead_bound(64, 256, 2.0) ==
        doctest::Approx(2.0 * rounding_overhead_bound(64, 256, 1.0)));
  CHECK_THROWS_AS(rounding_overhead_bound(64, 64, 1.0), std::domain_error);
  CHECK_THROWS_AS(rounding_overhead_bound(64, 32, 1.0), std::domain_error);

  CHECK(bound_in_regime(64, 256));
  CHECK_FALSE(bound_in_regime(64, 100));  // below 2n
  CHECK_FALSE(bound_in_regime(4, 64));    // above 2^n
}

TEST_CASE("integer centers skip the walk entirely") {
  RngStream mrng(31, 0);
  const GaussianMatrix a = sample_gaussian_matrix(8, 5, 1.0, mrng);
  const std::vector<double> x0 = {3.0, -2.0, 0.0, 7.0, -1.0};
  RngStream rng(31, 1);
  const RoundingCertificate cert = round_ip(a, x0, rng);
  CHECK(cert.rounds == 0);
  CHECK(cert.attempts == 0);
  CHECK(cert.phase_b_sizes.empty());
  for (int j = 0; j < 5; ++j) CHECK(cert.z[j] == static_cast<long long>(x0[j]));
  for (double o : cert.overhead) CHECK(o == 0.0);
  CHECK(cert.within_bound);
}

TEST_CASE("single fractional coordinate moves only that coordinate") {
  RngStream mrng(32, 0);
  const GaussianMatrix a = sample_gaussian_matrix(6, 4, 1.0, mrng);
  const std::vector<double> x0 = {2.0, 0.5, -3.0, 1.0};
  RngStream rng(32, 1);
  const RoundingCertificate cert = round_ip(a, x0, rng);
  CHECK(cert.z[0] == 2);
  CHECK((cert.z[1] == 0 || cert.z[1] == 1));
  CHECK(cert.z[2] == -3);
  CHECK(cert.z[3] == 1);
  for (int i = 0; i < a.rows; ++i) {
    CHECK(cert.overhead[i] <= std::abs(a(i, 1)) * 0.5 + 1e-12);
  }
}

TEST_CASE("certificate soundness on random instances") {
  RngStream mrng(33, 0);
  const GaussianMatrix a = sample_gaussian_matrix(32, 16, 1.0, mrng);
  RngStream crng(33, 1);
  std::vector<double> x0(16);
  for (double& v : x0) v = 4.0 * crng.next_gaussian();  // negatives included
  RngStream rng(33, 2);
  const RoundingCertificate cert = round_ip(a, x0, rng);

  for (int j = 0; j < 16; ++j) {
    const long long down = static_cast<long long>(std::floor(x0[j]));
    const long long up = static_cast<long long>(std::ceil(x0[j]));
    CHECK((cert.z[j] == down || cert.z[j] == up));
    const long long support = cert.z[j] - down;
    CHECK((support == 0 || support == 1));
  }
  for (int i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < 16; ++j) s += a(i, j) * (static_cast<double>(cert.z[j]) - x0[j]);
    CHECK(cert.overhead[i] == doctest::Approx(std::abs(s)).epsilon(1e-9));
  }
  // The pre-rounding point must be fully settled into the bands.
  for (double v : cert.final_fractional) {
    CHECK((v <= cert.delta || v >= 1.0 - cert.delta));
  }
}

TEST_CASE("phase sizes halve and rounds stay within the ceiling") {
  const int n = 64, m = 128;
  double total_attempts = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    RngStream mrng(34, 3 * trial);
    const GaussianMatrix a = sample_gaussian_matrix(m, n, 1.0, mrng);
    RngStream crng(34, 3 * trial + 1);
    std::vector<double> x0(n);
    for (double& v : x0) v = crng.next_unit();
    RngStream rng(34, 3 * trial + 2);
    const RoundingCertificate cert = round_ip(a, x0, rng);

    const int ceiling = static_cast<int>(std::ceil(std::log2(n))) + 1;
    CHECK(cert.rounds <= ceiling);
    CHECK(cert.rounds == static_cast<int>(cert.phase_b_sizes.size()));
    for (std::size_t k = 1; k < cert.phase_b_sizes.size(); ++k) {
      CHECK(2 * cert.phase_b_sizes[k] <= cert.phase_b_sizes[k - 1]);
    }
    total_attempts += cert.attempts;
  }
  CHECK(total_attempts / 20.0 <= 20.0 * std::log2(n));
}

TEST_CASE("randomized rounding adds at most ~sqrt(delta ln m) per unit row norm") {
  const int n = 32, m = 64;
  for (int trial = 0; trial < 20; ++trial) {
    RngStream mrng(35, 3 * trial);
    const GaussianMatrix a = sample_gaussian_matrix(m, n, 1.0, mrng);
    RngStream crng(35, 3 * trial + 1);
    std::vector<double> x0(n);
    for (double& v : x0) v = crng.next_unit();
    RngStream rng(35, 3 * trial + 2);
    const RoundingCertificate cert = round_ip(a, x0, rng);

    const double scale = std::sqrt(cert.delta * std::log(static_cast<double>(m)));
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j)
        s += a(i, j) * (static_cast<double>(cert.z[j]) - cert.final_fractional[j]);
      // 4*||A_i||*sqrt(delta ln m) with 2x slack.
      CHECK(std::abs(s) <= 8.0 * row_norm(a, i) * scale);
    }
  }
}

TEST_CASE("find_integer_point: guaranteed radius, degenerate radius") {
  const int n = 16;
  RngStream mrng(36, 0);
  const GaussianMatrix a = sample_gaussian_matrix(48, n, 1.0, mrng);
  RngStream crng(36, 1);
  std::vector<double> x0(n);
  for (double& v : x0) v = crng.next_unit();

  // Any rounding of x0 moves by less than sqrt(n), so R = sqrt(n) guarantees
  // membership of the certified point.
  const PolytopeInstance generous = make_instance(a, x0, std::sqrt(static_cast<double>(n)));
  RngStream rng(36, 2);
  const FindResult found = find_integer_point(generous, rng);
  REQUIRE(found.point.has_value());
  std::vector<double> zd(found.point->begin(), found.point->end());
  CHECK(contains(generous, zd));

  // R = 0 at the half-integer center is the single non-integer point x0.
  const PolytopeInstance degenerate =
      make_instance(a, std::vector<double>(n, 0.5), 0.0);
  RngStream rng2(36, 3);
  const FindResult missed = find_integer_point(degenerate, rng2);
  CHECK_FALSE(missed.point.has_value());
  CHECK(missed.certificate.z.size() == n);  // certificate still reported
}

TEST_CASE("round_ip is deterministic and rejects degenerate shapes") {
  RngStream mrng(37, 0);
  const GaussianMatrix a = sample_gaussian_matrix(8, 4, 1.0, mrng);
  const std::vector<double> x0 = {0.3, 0.7, 0.5, 0.1};
  RngStream r1(37, 1), r2(37, 1);
  const RoundingCertificate c1 = round_ip(a, x0, r1);
  const RoundingCertificate c2 = round_ip(a, x0, r2);
  CHECK(c1.z == c2.z);
  CHECK(c1.attempts == c2.attempts);
  CHECK(c1.overhead == c2.overhead);

  GaussianMatrix one_row;
  one_row.rows = 1;
  one_row.cols = 4;
  one_row.entries = {1.0, 0.0, 0.0, 0.0};
  RngStream rng(37, 2);
  CHECK_THROWS_AS(round_ip(one_row, x0, rng), std::invalid_argument);
}

TEST_CASE("certificate serialization carries the contract fields") {
  RngStream mrng(38, 0);
  const GaussianMatrix a = sample_gaussian_matrix(8, 4, 1.0, mrng);
  const std::vector<double> x0 = {0.3, 0.7, 0.5, 0.1};
  RngStream rng(38, 1);
  const RoundingCertificate cert = round_ip(a, x0, rng);
  const std::string json = certificate_to_json(cert);
  for (const char* key : {"\"z\"", "\"overhead_max\"", "\"bound\"", "\"within_bound\"",
                          "\"rounds\"", "\"attempts\"", "\"phase_B_sizes\""}) {
    CHECK(json.find(key) != std::string::npos);
  }
}
