#include "randip/edgewalk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace randip {

std::vector<int> active_set(std::span<const double> x, double delta) {
  std::vector<int> b;
  for (int j = 0; j < static_cast<int>(x.size()); ++j) {
    if (delta < x[j] && x[j] < 1.0 - delta) b.push_back(j);
  }
  return b;
}

PartialColoringState make_state(std::vector<double> x, double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("delta must be in (0, 0.5]");
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("state coordinates must lie in [0,1]");
  }
  PartialColoringState s;
  s.active = active_set(x, delta);
  s.x = std::move(x);
  s.delta = delta;
  return s;
}

bool budget_feasible(const WalkBudget& budget, int active_count) {
  double sum = 0.0;
  for (double c : budget.c) sum += std::exp(-c * c / 16.0);
  return sum <= active_count / 16.0;
}

namespace {

// Orthonormal basis of the tight-row normals restricted to the currently
// active coordinates. All vectors are full-length with zeros off-support.
struct TightBasis {
  std::vector<std::vector<double>> q;

  void rebuild(const GaussianMatrix& a, const std::vector<int>& tight,
               const std::vector<int>& act) {
    q.clear();
    for (int i : tight) {
      std::vector<double> w(a.cols, 0.0);
      const auto row = a.row(i);
      double nrm2 = 0.0;
      for (int j : act) {
        w[j] = row[j];
        nrm2 += row[j] * row[j];
      }
      if (nrm2 == 0.0) continue;
      const double wn = std::sqrt(nrm2);
      orthogonalize(w, act);
      orthogonalize(w, act);
      double rn = 0.0;
      for (int j : act) rn += w[j] * w[j];
      rn = std::sqrt(rn);
      if (rn <= 1e-10 * wn) continue;  // dependent on earlier normals
      for (int j : act) w[j] /= rn;
      q.push_back(std::move(w));
    }
  }

  void orthogonalize(std::vector<double>& v, const std::vector<int>& act) const {
    for (const auto& u : q) {
      double c = 0.0;
      for (int j : act) c += v[j] * u[j];
      for (int j : act) v[j] -= c * u[j];
    }
  }
};

}  // namespace

WalkAttempt edge_walk(const PartialColoringState& state, const GaussianMatrix& a,
                      const WalkBudget& budget, RngStream& rng, const WalkConfig& config) {
  const int m = a.rows;
  const int n = a.cols;
  if (static_cast<int>(state.x.size()) != n)
    throw std::invalid_argument("state dimension does not match matrix");
  if (static_cast<int>(budget.c.size()) != m)
    throw std::invalid_argument("budget must have one coefficient per row");
  const int entry_active = static_cast<int>(state.active.size());
  if (entry_active < 1) throw ContractError("edge_walk requires at least one active coordinate");
  if (!budget_feasible(budget, entry_active))
    throw ContractError("budget violates the walk entry condition sum exp(-c^2/16) <= |B|/16");

  const double delta = state.delta;
  const double coord_step = config.coord_step_fraction * delta;
  const double gamma = coord_step * std::sqrt(static_cast<double>(entry_active));
  std::uint64_t max_steps = static_cast<std::uint64_t>(
      std::ceil(config.variance_budget / (coord_step * coord_step)));
  max_steps = std::min(max_steps, config.max_steps_cap);

  // Per-row norms over the entry active set define the overhead budgets.
  // Every step moves x by at most gamma inside that set, so one step changes
  // d_i by at most gamma * ||A_i|B||; rows get marked tight one margin
  // before the hard budget and can never cross it.
  std::vector<double> restricted(m), hard(m), margin(m);
  for (int i = 0; i < m; ++i) {
    double rn2 = 0.0;
    const auto row = a.row(i);
    for (int j : state.active) rn2 += row[j] * row[j];
    restricted[i] = std::sqrt(rn2);
    hard[i] = budget.c[i] * restricted[i];
    margin[i] = hard[i] - gamma * restricted[i];
  }

  WalkAttempt attempt;
  attempt.stats.entry_active = entry_active;
  attempt.stats.gamma = gamma;

  std::vector<double> x = state.x;
  std::vector<int> act = state.active;
  std::vector<char> is_tight(m, 0);
  std::vector<int> tight;
  TightBasis basis;

  // Row dot products d_i = A_i.(x - x_entry) are updated lazily: exact at
  // each flush, bounded in between by |d_i at flush| + ||A_i|B||*cum since
  // every step moves x by at most gamma inside the entry active set.
  std::vector<double> d(m, 0.0);
  std::vector<double> x_flush = x;
  std::vector<int> act_flush = act;
  double cum = 0.0;
  double margin_safe = 0.0;

  const auto flush = [&] {
    for (int i = 0; i < m; ++i) {
      const auto row = a.row(i);
      double inc = 0.0;
      for (int j : act_flush) inc += row[j] * (x[j] - x_flush[j]);
      d[i] += inc;
    }
    x_flush = x;
    act_flush = act;
    cum = 0.0;
    bool new_tight = false;
    margin_safe = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (is_tight[i] || restricted[i] == 0.0) continue;  // zero rows never move
      if (std::abs(d[i]) >= margin[i]) {
        is_tight[i] = 1;
        tight.push_back(i);
        new_tight = true;
      } else {
        margin_safe = std::min(margin_safe, (margin[i] - std::abs(d[i])) / restricted[i]);
      }
    }
    if (new_tight) {
      attempt.stats.constraints_hit = static_cast<int>(tight.size());
      basis.rebuild(a, tight, act);
    }
  };
  flush();

  std::vector<double> dir(n, 0.0);
  bool halved = 2 * static_cast<int>(act.size()) <= entry_active;
  int stuck = 0;

  for (std::uint64_t step = 0; step < max_steps && !halved; ++step) {
    if (cum + gamma > margin_safe) flush();

    for (int j : act) dir[j] = rng.next_gaussian();
    basis.orthogonalize(dir, act);
    basis.orthogonalize(dir, act);
    double nrm2 = 0.0;
    for (int j : act) nrm2 += dir[j] * dir[j];
    const double nrm = std::sqrt(nrm2);
    if (nrm <= 1e-12 * std::sqrt(static_cast<double>(act.size()))) {
      if (++stuck >= 3) break;  // tight rows span the active subspace
      continue;
    }
    stuck = 0;

    const double scale = gamma / nrm;
    for (int j : act) {
      double v = x[j] + scale * dir[j];
      if (v < 0.0) {
        v = 0.0;
        ++attempt.stats.clamp_count;
      } else if (v > 1.0) {
        v = 1.0;
        ++attempt.stats.clamp_count;
      }
      x[j] = v;
    }
    cum += gamma;
    ++attempt.stats.steps;

    // Freeze coordinates that reached the band; they keep their value.
    bool any_frozen = false;
    for (std::size_t k = act.size(); k-- > 0;) {
      const int j = act[k];
      if (x[j] <= delta || x[j] >= 1.0 - delta) {
        act[k] = act.back();
        act.pop_back();
        any_frozen = true;
      }
    }
    if (any_frozen) {
      if (config.early_exit && 2 * static_cast<int>(act.size()) <= entry_active) {
        halved = true;
        break;
      }
      if (!tight.empty()) basis.rebuild(a, tight, act);
    }
  }

  attempt.stats.exit_active = static_cast<int>(act.size());
  if (2 * static_cast<int>(act.size()) > entry_active) return attempt;  // failure

  PartialColoringState y = make_state(std::move(x), delta);
  const VerifyReport report = verify_partial(state, y, a, budget);
  if (!report.ok) return attempt;  // never hand back an unverified point
  attempt.success = true;
  attempt.y = std::move(y);
  return attempt;
}

VerifyReport verify_partial(const PartialColoringState& x, const PartialColoringState& y,
                            const GaussianMatrix& a, const WalkBudget& budget) {
  if (x.x.size() != y.x.size()) throw std::invalid_argument("states differ in length");
  const int m = a.rows;
  const int n = a.cols;
  if (static_cast<int>(x.x.size()) != n)
    throw std::invalid_argument("state dimension does not match matrix");
  if (static_cast<int>(budget.c.size()) != m)
    throw std::invalid_argument("budget must have one coefficient per row");

  VerifyReport report;
  report.active_before = static_cast<int>(x.active.size());
  report.active_after = static_cast<int>(y.active.size());

  std::vector<char> in_b(n, 0);
  for (int j : x.active) in_b[j] = 1;

  report.frozen_ok = true;
  for (int j = 0; j < n; ++j) {
    if (!in_b[j] && y.x[j] != x.x[j]) {
      report.frozen_ok = false;
      report.violating_coordinates.push_back(j);
    }
  }

  std::vector<double> diff(n);
  for (int j = 0; j < n; ++j) diff[j] = y.x[j] - x.x[j];

  report.overhead_ok = true;
  for (int i = 0; i < m; ++i) {
    const auto row = a.row(i);
    double lhs = 0.0, rn2 = 0.0;
    for (int j = 0; j < n; ++j) lhs += row[j] * diff[j];
    for (int j : x.active) rn2 += row[j] * row[j];
    lhs = std::abs(lhs);
    const double rhs = budget.c[i] * std::sqrt(rn2);
    if (lhs > rhs * (1.0 + 1e-9) + 1e-12) {
      report.overhead_ok = false;
      report.violating_rows.push_back({i, lhs, rhs});
    }
  }

  report.halving_ok = 2 * report.active_after <= report.active_before;

  report.ok = report.overhead_ok && report.halving_ok && report.frozen_ok;
  if (!report.ok) {
    if (!report.frozen_ok)
      report.failure = "condition 3: frozen coordinate changed (first: " +
                       std::to_string(report.violating_coordinates.front()) + ")";
    else if (!report.overhead_ok)
      report.failure = "condition 1: row overhead exceeds budget (" +
                       std::to_string(report.violating_rows.size()) + " rows)";
    else
      report.failure = "condition 2: active set did not halve (" +
                       std::to_string(report.active_before) + " -> " +
                       std::to_string(report.active_after) + ")";
  }
  return report;
}

}  // namespace randip
