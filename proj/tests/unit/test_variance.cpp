#include "doctest.h"
#include "seqroc/errors.hpp"
#include "seqroc/roc.hpp"
#include "seqroc/variance.hpp"

#include <cmath>
#include <numeric>

using namespace seqroc;

namespace {
double sample_var(const std::vector<double>& v) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}
}  // namespace

TEST_CASE("kernel density") {
  Rng rng(1);
  std::normal_distribution<double> z;
  std::vector<double> s(10000);
  for (auto& x : s) x = z(rng);
  CHECK(kde_at(s, 0.0) == doctest::Approx(0.3989).epsilon(0.05));
  const std::vector<double> sym{-1.3, 1.3};
  for (double x : {0.2, 0.9, 2.5}) CHECK(kde_at(sym, x, 0.4) == doctest::Approx(kde_at(sym, -x, 0.4)));
  const std::vector<double> flat(10, 2.0);
  CHECK_THROWS_AS(silverman_bandwidth(flat), DegenerateSampleError);
  // zero IQR but positive spread falls back to the sd
  std::vector<double> spiky(20, 1.0);
  spiky[0] = 5;
  CHECK(silverman_bandwidth(spiky) > 0.0);
}

TEST_CASE("smoothed survival quantile inverts the survival") {
  Rng rng(3);
  std::normal_distribution<double> z;
  std::vector<double> s(500);
  for (auto& x : s) x = z(rng);
  for (double t : {0.05, 0.1, 0.3}) {
    const double u = smoothed_survival_quantile(s, t, 0.2);
    CHECK(smoothed_survival(s, u, 0.2) == doctest::Approx(t).epsilon(1e-9));
  }
}

TEST_CASE("univariate ROC has zero total slope derivative") {
  const auto d = generate_mvn_panel(misspecified_scenario(1, 1.5, 2000, 2000), 4);
  const Matrix x = d.columns({0});
  const ModelFit f = fit_logistic(x, d.labels);
  const Gradients gr = gradients_gh(f, x, d.labels, 0.1);
  CHECK(std::abs(gr.g[0] + gr.h[0]) < 0.02);
}

TEST_CASE("g matches a conditional-moment oracle") {
  const auto d = generate_mvn_panel(correct_model_scenario(1, 1.1, 5000, 5000), 8);
  const ModelFit f = fit_logistic(d.markers, d.labels);
  const Gradients gr = gradients_gh(f, d.markers, d.labels, 0.1);
  const Vector s = combination_scores(f, d.markers);
  std::vector<double> case_scores;
  for (int i = 0; i < d.n(); ++i)
    if (d.labels[i]) case_scores.push_back(s[i]);
  const double dens = kde_at(case_scores, gr.threshold);
  const double bw = silverman_bandwidth(case_scores);
  for (int j = 0; j < 2; ++j) {
    double sum = 0;
    int n = 0;
    for (int i = 0; i < d.n(); ++i)
      if (d.labels[i] && std::abs(s[i] - gr.threshold) < bw) {
        sum += d.markers(i, j);
        ++n;
      }
    REQUIRE(n > 30);
    CHECK(gr.g[j] == doctest::Approx(dens * sum / n).epsilon(0.25));
  }
}

TEST_CASE("total derivative vanishes along the slope direction") {
  const auto d = generate_mvn_panel(misspecified_scenario(1, 1.5, 3000, 3000), 15);
  ModelFit f = fit_logistic(d.markers, d.labels);
  f.slopes *= 2.0;
  const Gradients base = gradients_gh(f, d.markers, d.labels, 0.1);
  const Vector total = base.g + base.h;
  const double along = total.dot(f.slopes) / f.slopes.norm();
  CHECK(std::abs(along) < 0.02 * total.norm() + 0.01);
}

TEST_CASE("identical panels give zero incremental variance") {
  const auto d = generate_mvn_panel(misspecified_scenario(1, 1.5, 200, 200), 3);
  const ModelFit f = fit_logistic(d.markers, d.labels);
  const VarianceEstimate v = sigma_components(f, f, d.markers, d.markers, d.labels, 0.1);
  CHECK(v.sigma_f == doctest::Approx(v.sigma_r));
  CHECK(v.sigma_fr == doctest::Approx(v.sigma_f));
  CHECK(std::abs(v.sigma_delta) < 1e-15);
  CHECK(v.per_subject_full == v.per_subject_restricted);
}

TEST_CASE("single-marker variance tracks Monte Carlo variance") {
  // reduced-scale version of the 2000-replicate acceptance check
  const auto c = misspecified_scenario(1, 1.5, 300, 300);
  std::vector<double> roc, est;
  for (int r = 0; r < 400; ++r) {
    const auto d = generate_mvn_panel(c, make_rng(99, r)());
    const Matrix x = d.columns({0});
    const ModelFit f = fit_logistic(x, d.labels);
    roc.push_back(empirical_roc(combination_scores(f, x), d.labels, 0.1).value);
    est.push_back(sigma_single_panel(f, x, d.labels, 0.1).sigma_f);
  }
  const double mean_est = std::accumulate(est.begin(), est.end(), 0.0) / est.size();
  CHECK(mean_est == doctest::Approx(sample_var(roc)).epsilon(0.25));
}
