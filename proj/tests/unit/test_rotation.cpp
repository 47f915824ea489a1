#include "doctest.h"
#include "seqroc/errors.hpp"
#include "seqroc/rotation.hpp"

#include <cmath>
#include <map>

using namespace seqroc;

namespace {
// Exact expected count by recursion over the per-group unit vector.
double dp_expected(std::vector<int> units, double p, std::map<std::vector<int>, double>& memo) {
  const int top = *std::max_element(units.begin(), units.end());
  if (top == 0) return 0.0;
  if (auto it = memo.find(units); it != memo.end()) return it->second;
  std::vector<std::size_t> fullest;
  for (std::size_t g = 0; g < units.size(); ++g)
    if (units[g] == top) fullest.push_back(g);
  double acc = 0.0;
  for (std::size_t g1 : fullest) {
    std::vector<int> stop = units;
    --stop[g1];
    double e = p * (1.0 + dp_expected(stop, p, memo));
    bool complete = true;
    for (std::size_t g = 0; g < units.size(); ++g)
      if (g != g1 && units[g] < 1) complete = false;
    if (complete) {
      std::vector<int> cont = units;
      for (auto& u : cont) --u;
      e += (1.0 - p) * (1.0 + dp_expected(cont, p, memo));
    }
    acc += e;
  }
  const double v = acc / static_cast<double>(fullest.size());
  memo[units] = v;
  return v;
}

double dp_expected(int V, int kappa, double p) {
  std::map<std::vector<int>, double> memo;
  return dp_expected(std::vector<int>(static_cast<std::size_t>(kappa), V), p, memo);
}

RotationConfig config(int V, int kappa, int tail_floor = 10) {
  RotationConfig c;
  c.V = V;
  c.kappa = kappa;
  c.test.lambda = 1.0 / kappa;
  c.tail_min_per_stratum = tail_floor;
  return c;
}
}  // namespace

TEST_CASE("closed form matches exact recursion") {
  for (auto [V, kappa] : {std::pair{1, 2}, {3, 2}, {5, 2}, {10, 2}, {4, 3}, {10, 3}, {6, 4}})
    for (double p : {0.0, 0.1, 0.37, 0.5, 0.8, 1.0})
      CHECK(expected_evaluated(p, V, kappa) == doctest::Approx(dp_expected(V, kappa, p)).epsilon(1e-10));
  CHECK(expected_evaluated(0.3, 1, 2) == doctest::Approx(1 + 0.3 * 0.3));
}

TEST_CASE("endpoints and derived expectations") {
  for (int V : {1, 5, 10, 50})
    for (int kappa : {2, 3}) {
      CHECK(expected_evaluated(0.0, V, kappa) == doctest::Approx(V));
      CHECK(expected_evaluated(1.0, V, kappa) == doctest::Approx(kappa * V));
    }
  CHECK(expected_evaluated(0.6712, 10, 2) == doctest::Approx(14.990).epsilon(1e-4));
  CHECK(expected_rejected(14.99, 0.0) == 0.0);
  CHECK(expected_rejected(14.99, 1.0) == 14.99);
  CHECK(expected_true_validated(12.0, 0.7, 1.0) == 0.0);
  CHECK(expected_true_validated(12.0, 0.7, 0.0) == doctest::Approx(12.0 * 0.7));
  CHECK_THROWS_AS(expected_evaluated(1.2, 10, 2), DomainError);
}

TEST_CASE("forced stop and forced continue") {
  const RotationLayout layout = RotationLayout::balanced(20, 20, 2);
  Rng rng(1);
  BernoulliEvaluator always_stop(1.0), never_stop(0.0);
  const RotationOutcome a = simulate_rotation(layout, config(10, 2), always_stop, rng);
  CHECK(a.n_star == 20);
  CHECK(a.fixed_sample_tests == 0);
  const RotationOutcome b = simulate_rotation(layout, config(10, 2), never_stop, rng);
  CHECK(b.n_star == 10);
  for (int u : b.units_remaining) CHECK(u == 0);
}

TEST_CASE("ledger conservation") {
  const RotationLayout layout = RotationLayout::balanced(12, 15, 3);
  BernoulliEvaluator ev(0.45, 0.5, 0.4, 0.3);
  for (int r = 0; r < 200; ++r) {
    Rng rng = make_rng(5, r);
    const RotationOutcome o = simulate_rotation(layout, config(7, 3, 10), ev, rng);
    long long used = 0;
    for (int u : o.units_remaining) {
      CHECK(u >= 0);
      used += 7 - u;
    }
    CHECK(used == o.units_consumed);
    CHECK(o.n_u_t_star <= o.n_u_star);
    CHECK(o.n_u_star <= o.n_star);
    CHECK(o.incomplete <= 1);
    CHECK(o.fixed_sample_rejections <= o.fixed_sample_tests);
  }
}

TEST_CASE("simulated mean agrees with the closed form") {
  const RotationLayout layout = RotationLayout::balanced(20, 20, 2);
  for (double p : {0.2, 0.6}) {
    BernoulliEvaluator ev(p);
    const int runs = 4000;
    double s = 0, s2 = 0;
    for (int r = 0; r < runs; ++r) {
      Rng rng = make_rng(17, r);
      const double n = simulate_rotation(layout, config(5, 2), ev, rng).n_star;
      s += n;
      s2 += n * n;
    }
    const double mean = s / runs;
    const double se = std::sqrt((s2 / runs - mean * mean) / runs);
    CHECK(std::abs(mean - expected_evaluated(p, 5, 2)) < 4 * se);
  }
}

TEST_CASE("default arm always evaluates V markers") {
  const RotationLayout layout = RotationLayout::balanced(20, 20, 2);
  BernoulliEvaluator ev(0.5, 0.5, 0.3, 0.5);
  for (int r = 0; r < 50; ++r) {
    Rng rng = make_rng(2, r);
    const RotationOutcome o = simulate_default(layout, config(10, 2), ev, rng);
    CHECK(o.n_star == 10);
    for (int u : o.units_remaining) CHECK(u == 0);
  }
}

TEST_CASE("configuration checks") {
  RotationConfig c = config(10, 2);
  CHECK_NOTHROW(c.validate());
  c.test.lambda = 0.4;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK_THROWS_AS(BernoulliEvaluator(1.5), ConfigError);
  const RotationLayout layout = RotationLayout::balanced(20, 20, 3);
  BernoulliEvaluator ev(0.5);
  Rng rng(1);
  CHECK_THROWS_AS(simulate_rotation(layout, config(5, 2), ev, rng), PreconditionError);
}

TEST_CASE("data-driven rotation runs end to end") {
  auto base = generate_mvn_panel(misspecified_scenario(1, 1.5, 120, 120), 3);
  assign_groups(base, 2, 9);
  const RotationLayout layout = RotationLayout::from_data(base, 2);
  TestConfig t;
  t.delta0 = 0.165;
  t.new_marker_columns = {1};
  t.boundaries = solve_boundaries(0.05, 0.5, Spending::pocock, Stopping::both);
  const ScenarioConfig sc = misspecified_scenario(1, 1.5, 120, 120);
  DataEvaluator ev([&](Rng& rng) { return DataEvaluator::Candidate{redraw_candidate(base, sc, rng)}; },
                   t);
  RotationConfig c = config(4, 2);
  c.test = t;
  Rng rng(12);
  const RotationOutcome o = simulate_rotation(layout, c, ev, rng);
  CHECK(o.n_star >= 4);
  CHECK(o.n_star <= 8);
  CHECK(o.ledger_history.size() >= static_cast<std::size_t>(o.n_star));
}
