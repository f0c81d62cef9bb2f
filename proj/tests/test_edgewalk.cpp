#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "randip/edgewalk.hpp"

using namespace randip;

namespace {

WalkBudget uniform_budget(int m, double c) {
  WalkBudget budget;
  budget.c.assign(m, c);
  return budget;
}

}  // namespace

TEST_CASE("active_set uses strict band boundaries") {
  const std::vector<double> x = {0.0, 0.1, 0.5, 0.9, 1.0};
  CHECK(active_set(x, 0.1) == std::vector<int>{2});
  CHECK(active_set(x, 0.05) == std::vector<int>{1, 2, 3});
  const PartialColoringState s = make_state(x, 0.1);
  CHECK(s.active == active_set(s.x, s.delta));
  CHECK_THROWS_AS(make_state({0.5, 1.2}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_state({0.5}, 0.0), std::invalid_argument);
}

TEST_CASE("budget feasibility condition") {
  CHECK(budget_feasible(uniform_budget(2, 10.0), 1));
  CHECK_FALSE(budget_feasible(uniform_budget(2, 0.0), 1));  // 2 > 1/16
  // 128 rows at the clamped coefficient stay far inside the condition.
  CHECK(budget_feasible(uniform_budget(128, 15.538522395110354), 128));
}

TEST_CASE("one active coordinate walks into the band, frozen ones stay put") {
  RngStream mrng(21, 0);
  const GaussianMatrix a = sample_gaussian_matrix(2, 3, 1.0, mrng);
  const PartialColoringState state = make_state({0.0, 0.5, 1.0}, 0.1);
  REQUIRE(state.active == std::vector<int>{1});

  RngStream wrng(21, 1);
  const WalkAttempt attempt = edge_walk(state, a, uniform_budget(2, 10.0), wrng);
  REQUIRE(attempt.success);
  CHECK(attempt.y.x[0] == 0.0);
  CHECK(attempt.y.x[2] == 1.0);
  CHECK((attempt.y.x[1] <= 0.1 || attempt.y.x[1] >= 0.9));
  CHECK(attempt.y.active.empty());
  CHECK(attempt.stats.steps > 0);
  CHECK(verify_partial(state, attempt.y, a, uniform_budget(2, 10.0)).ok);
}

TEST_CASE("preconditions are contract errors") {
  RngStream mrng(22, 0);
  const GaussianMatrix a = sample_gaussian_matrix(2, 2, 1.0, mrng);
  RngStream wrng(22, 1);

  const PartialColoringState frozen = make_state({0.05, 0.95}, 0.1);
  CHECK(frozen.active.empty());
  CHECK_THROWS_AS(edge_walk(frozen, a, uniform_budget(2, 10.0), wrng), ContractError);

  const PartialColoringState live = make_state({0.5, 0.5}, 0.1);
  CHECK_THROWS_AS(edge_walk(live, a, uniform_budget(2, 0.0), wrng), ContractError);
}

TEST_CASE("verify_partial rejects no-progress and frozen-coordinate changes") {
  RngStream mrng(23, 0);
  const GaussianMatrix a = sample_gaussian_matrix(3, 4, 1.0, mrng);
  const WalkBudget budget = uniform_budget(3, 8.0);
  const PartialColoringState x = make_state({0.0, 0.5, 0.5, 1.0}, 0.1);

  const VerifyReport same = verify_partial(x, x, a, budget);
  CHECK_FALSE(same.ok);
  CHECK(same.failure.find("condition 2") != std::string::npos);

  PartialColoringState y = x;
  y.x[0] = 0.05;  // frozen coordinate moved
  y.active = active_set(y.x, y.delta);
  const VerifyReport moved = verify_partial(x, y, a, budget);
  CHECK_FALSE(moved.ok);
  CHECK(moved.failure.find("condition 3") != std::string::npos);
  CHECK(moved.violating_coordinates == std::vector<int>{0});
}

TEST_CASE("verify_partial flags overhead violations with row slack") {
  GaussianMatrix a;
  a.rows = 1;
  a.cols = 2;
  a.entries = {1.0, 0.0};
  const PartialColoringState x = make_state({0.5, 0.5}, 0.1);
  const PartialColoringState y = make_state({0.95, 0.05}, 0.1);
  // Row overhead |1*(0.95-0.5)| = 0.45 against budget c*||A_1|B|| = 0.1.
  const VerifyReport report = verify_partial(x, y, a, uniform_budget(1, 0.1));
  CHECK_FALSE(report.ok);
  REQUIRE(report.violating_rows.size() == 1);
  CHECK(report.violating_rows[0].row == 0);
  CHECK(report.violating_rows[0].lhs == doctest::Approx(0.45));
  CHECK(report.violating_rows[0].rhs == doctest::Approx(0.1));
  CHECK(report.failure.find("condition 1") != std::string::npos);
}

TEST_CASE("verify outcome is invariant under positive row scaling") {
  RngStream mrng(24, 0);
  const GaussianMatrix a = sample_gaussian_matrix(6, 8, 1.0, mrng);
  GaussianMatrix scaled = a;
  for (double& e : scaled.entries) e *= 7.5;

  const PartialColoringState x = make_state(std::vector<double>(8, 0.5), 0.05);
  const WalkBudget budget = uniform_budget(6, 9.0);
  RngStream wrng(24, 1);
  const WalkAttempt attempt = edge_walk(x, a, budget, wrng);
  REQUIRE(attempt.success);
  CHECK(verify_partial(x, attempt.y, a, budget).ok ==
        verify_partial(x, attempt.y, scaled, budget).ok);
}

TEST_CASE("feasible configuration succeeds often and every success verifies") {
  const int n = 32, m = 32;
  RngStream mrng(25, 0);
  const GaussianMatrix a = sample_gaussian_matrix(m, n, 1.0, mrng);
  const double delta = 1.0 / (8.0 * std::log(static_cast<double>(m)));
  const PartialColoringState x = make_state(std::vector<double>(n, 0.5), delta);
  const double c = 8.0 * std::sqrt(std::log(16.0 * std::exp(1.0)));
  const WalkBudget budget = uniform_budget(m, c);
  REQUIRE(budget_feasible(budget, static_cast<int>(x.active.size())));

  int successes = 0;
  for (int attempt_id = 0; attempt_id < 20; ++attempt_id) {
    RngStream wrng(25, 100 + attempt_id);
    const WalkAttempt attempt = edge_walk(x, a, budget, wrng);
    if (!attempt.success) continue;
    ++successes;
    const VerifyReport report = verify_partial(x, attempt.y, a, budget);
    CHECK(report.ok);
    for (int j = 0; j < n; ++j) {
      CHECK(attempt.y.x[j] >= 0.0);
      CHECK(attempt.y.x[j] <= 1.0);
      const bool was_active =
          std::find(x.active.begin(), x.active.end(), j) != x.active.end();
      if (!was_active) CHECK(attempt.y.x[j] == x.x[j]);
    }
    CHECK(2 * static_cast<int>(attempt.y.active.size()) <=
          static_cast<int>(x.active.size()));
  }
  CHECK(successes >= 10);
}

TEST_CASE("deterministic given the stream") {
  RngStream mrng(26, 0);
  const GaussianMatrix a = sample_gaussian_matrix(4, 6, 1.0, mrng);
  const PartialColoringState x = make_state(std::vector<double>(6, 0.5), 0.05);
  const WalkBudget budget = uniform_budget(4, 10.0);
  RngStream r1(26, 9), r2(26, 9);
  const WalkAttempt a1 = edge_walk(x, a, budget, r1);
  const WalkAttempt a2 = edge_walk(x, a, budget, r2);
  CHECK(a1.success == a2.success);
  CHECK(a1.stats.steps == a2.stats.steps);
  if (a1.success) CHECK(a1.y.x == a2.y.x);
}
