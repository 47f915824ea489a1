#include "doctest.h"
#include "seqroc/errors.hpp"
#include "seqroc/logistic.hpp"

#include <cmath>

using namespace seqroc;

namespace {
// Independent optimiser: coordinate-wise golden-section passes on the log-likelihood.
double loglik(const Matrix& x, const std::vector<int>& y, const Vector& c) {
  double ll = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double eta = c[0] + x.row(i).dot(c.tail(x.cols()));
    ll += y[static_cast<std::size_t>(i)] * eta - std::log1p(std::exp(eta));
  }
  return ll;
}

Vector coordinate_ascent(const Matrix& x, const std::vector<int>& y, int passes) {
  Vector c = Vector::Zero(x.cols() + 1);
  const double g = (std::sqrt(5.0) - 1) / 2;
  for (int pass = 0; pass < passes; ++pass)
    for (Eigen::Index j = 0; j < c.size(); ++j) {
      double lo = c[j] - 3, hi = c[j] + 3;
      for (int it = 0; it < 80; ++it) {
        const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
        Vector ca = c, cb = c;
        ca[j] = a;
        cb[j] = b;
        if (loglik(x, y, ca) > loglik(x, y, cb)) hi = b; else lo = a;
      }
      c[j] = 0.5 * (lo + hi);
    }
  return c;
}
}  // namespace

TEST_CASE("no association gives flat slopes") {
  // identical marker values for cases and controls
  Matrix x(200, 1);
  std::vector<int> y(200);
  for (int i = 0; i < 100; ++i) {
    x(i, 0) = x(i + 100, 0) = std::sin(i * 1.7);
    y[i] = 1;
    y[i + 100] = 0;
  }
  const ModelFit f = fit_logistic(x, y);
  CHECK(f.converged);
  CHECK(std::abs(f.slopes[0]) < 1e-8);
  CHECK(std::abs(f.intercept) < 1e-8);
}

TEST_CASE("slopes follow the LDA direction under the correct model") {
  const auto d = generate_mvn_panel(correct_model_scenario(1, 1.1, 40000, 40000), 21);
  const ModelFit f = fit_logistic(d.markers, d.labels);
  CHECK(f.slopes[0] / f.slopes[1] == doctest::Approx(0.8125 / 0.9375).epsilon(0.05));
  CHECK(f.slopes[0] == doctest::Approx(0.8125).epsilon(0.05));
}

TEST_CASE("Newton solution matches an independent optimiser") {
  const auto d = generate_mvn_panel(misspecified_scenario(1, 1.5, 150, 150), 2);
  const ModelFit f = fit_logistic(d.markers, d.labels);
  const Vector oracle = coordinate_ascent(d.markers, d.labels, 60);
  for (Eigen::Index j = 0; j < oracle.size(); ++j)
    CHECK(f.coefficients()[j] == doctest::Approx(oracle[j]).epsilon(1e-3));
  // log-likelihood never decreases along the iteration
  for (std::size_t k = 1; k < f.loglik_trace.size(); ++k)
    CHECK(f.loglik_trace[k] >= f.loglik_trace[k - 1] - 1e-10);
}

TEST_CASE("separation and rank deficiency are reported") {
  Matrix x(20, 1);
  std::vector<int> y(20);
  for (int i = 0; i < 20; ++i) {
    x(i, 0) = i;
    y[i] = i >= 10;
  }
  CHECK_THROWS_AS(fit_logistic(x, y), SeparationError);

  Matrix x2(20, 2);
  for (int i = 0; i < 20; ++i) {
    x2(i, 0) = std::cos(i);
    x2(i, 1) = 2 * x2(i, 0);
    y[i] = i % 2;
  }
  CHECK_THROWS_AS(fit_logistic(x2, y), SingularDesignError);
  CHECK_THROWS_AS(fit_logistic(x, std::vector<int>(20, 1)), PreconditionError);
}

TEST_CASE("influence vectors sum to zero and halve under duplication") {
  const auto d = generate_mvn_panel(misspecified_scenario(1, 1.5, 120, 100), 6);
  const ModelFit f = fit_logistic(d.markers, d.labels);
  const Matrix core = influence_core(f, d.markers, d.labels);
  CHECK(core.colwise().sum().cwiseAbs().maxCoeff() < 1e-6);

  Matrix dup(2 * d.n(), 2);
  dup << d.markers, d.markers;
  std::vector<int> ydup = d.labels;
  ydup.insert(ydup.end(), d.labels.begin(), d.labels.end());
  const ModelFit f2 = fit_logistic(dup, ydup);
  const Matrix core2 = influence_core(f2, dup, ydup);
  for (int i = 0; i < d.n(); ++i)
    for (int j = 0; j < 2; ++j) CHECK(core2(i, j) == doctest::Approx(core(i, j) / 2).epsilon(1e-6));
}

TEST_CASE("sandwich collapses to the inverse information without association") {
  // Null association: markers independent of labels, so the model is correct.
  ScenarioConfig c;
  c.mu_case = Vector::Zero(2);
  c.cov_case = c.cov_control = Matrix{{1, 0.3}, {0.3, 1}};
  c.n_cases = c.n_controls = 20000;
  const auto d = generate_mvn_panel(c, 13);
  const ModelFit f = fit_logistic(d.markers, d.labels);
  const Matrix core = influence_core(f, d.markers, d.labels);
  const Matrix sandwich = core.transpose() * core;
  const Matrix model = f.inv_information.bottomRightCorner(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(sandwich(i, j) == doctest::Approx(model(i, j)).epsilon(0.1));
}
