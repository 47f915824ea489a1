#include "doctest.h"
#include "seqroc/errors.hpp"
#include "seqroc/roc.hpp"

using namespace seqroc;

TEST_CASE("combination scores") {
  ModelFit f;
  f.intercept = 3;
  f.slopes = Vector::Zero(2);
  Matrix x{{1, 2}, {3, 4}};
  CHECK(combination_scores(f, x).isZero());
  f.slopes = Vector::Ones(1);
  Matrix y{{1.5}, {-2}};
  CHECK(combination_scores(f, y) == y.col(0));
  f.slopes = Vector::Ones(3);
  CHECK_THROWS_AS(combination_scores(f, x), PreconditionError);
}

TEST_CASE("control quantile order-statistic rule") {
  const std::vector<double> c{3, 1, 5, 2, 4};
  CHECK(cutoff_rank(0.2, 5) == 1);
  CHECK(control_quantile(c, 0.2) == 5);
  CHECK(control_quantile(c, 0.0) == 5);
  CHECK(cutoff_rank(0.41, 5) == 3);
  CHECK(control_quantile(c, 0.41) == 3);
  // t * n0 an exact integer must not round up through floating error
  CHECK(cutoff_rank(0.1, 200) == 20);
  CHECK(cutoff_rank(0.3, 10) == 3);
  CHECK_THROWS_AS(cutoff_rank(1.0, 5), DomainError);
}

TEST_CASE("empirical ROC") {
  const std::vector<double> cases{6, 5.5, 4}, controls{1, 2, 3, 4, 5};
  const RocEstimate r = empirical_roc(cases, controls, 0.2);
  CHECK(r.threshold == 5);
  CHECK(r.value == doctest::Approx(2.0 / 3.0));
  const std::vector<double> high{10, 11, 12};
  for (double t : {0.0, 0.1, 0.5, 0.9}) CHECK(empirical_roc(high, controls, t).value == 1.0);
}

TEST_CASE("null ROC is the diagonal and positive rescaling is harmless") {
  ScenarioConfig c;
  c.mu_case = Vector::Zero(2);
  c.cov_case = c.cov_control = Matrix::Identity(2, 2);
  c.n_cases = c.n_controls = 20000;
  const auto d = generate_mvn_panel(c, 4);
  ModelFit f;
  f.slopes = Vector{{0.7, -0.2}};
  const double v = empirical_roc(combination_scores(f, d.markers), d.labels, 0.1).value;
  CHECK(std::abs(v - 0.1) < 3 * std::sqrt(0.1 * 0.9 / 20000) + 3 * 0.1 / std::sqrt(20000.0));

  const auto e = generate_mvn_panel(misspecified_scenario(1, 1.5, 100, 100), 9);
  const ModelFit g = fit_logistic(e.markers, e.labels);
  ModelFit g2 = g;
  g2.slopes *= 2.0;
  for (double t : {0.05, 0.1, 0.2})
    CHECK(empirical_roc(combination_scores(g, e.markers), e.labels, t).value ==
          empirical_roc(combination_scores(g2, e.markers), e.labels, t).value);
}
