#include "doctest.h"
#include "seqroc/errors.hpp"
#include "seqroc/scenario.hpp"

#include <fstream>

using namespace seqroc;

namespace {
double stratum_cov(const CaseControlData& d, int label) {
  double m0 = 0, m1 = 0, s = 0;
  int n = 0;
  for (int i = 0; i < d.n(); ++i)
    if (d.labels[i] == label) {
      m0 += d.markers(i, 0);
      m1 += d.markers(i, 1);
      ++n;
    }
  m0 /= n;
  m1 /= n;
  for (int i = 0; i < d.n(); ++i)
    if (d.labels[i] == label) s += (d.markers(i, 0) - m0) * (d.markers(i, 1) - m1);
  return s / (n - 1);
}

std::string tmp(const char* name) { return std::string(SEQROC_TEST_TMP) + "/" + name; }
}  // namespace

TEST_CASE("identical strata give zero-mean markers") {
  ScenarioConfig c;
  c.mu_case = Vector::Zero(2);
  c.cov_case = c.cov_control = Matrix::Identity(2, 2);
  c.n_cases = c.n_controls = 20000;
  const auto d = generate_mvn_panel(c, 5);
  CHECK(d.n_cases() == 20000);
  const double se = 1.0 / std::sqrt(20000.0);
  for (int j = 0; j < 2; ++j) {
    double case_mean = 0, control_mean = 0;
    for (int i = 0; i < d.n(); ++i) (d.labels[i] ? case_mean : control_mean) += d.markers(i, j);
    CHECK(std::abs(case_mean / 20000) < 3 * se);
    CHECK(std::abs(control_mean / 20000) < 3 * se);
  }
}

TEST_CASE("preset covariances") {
  const auto correct = generate_mvn_panel(correct_model_scenario(1, 1.1, 20000, 20000), 1);
  CHECK(stratum_cov(correct, 1) == doctest::Approx(0.2).epsilon(0.15));
  CHECK(stratum_cov(correct, 0) == doctest::Approx(0.2).epsilon(0.15));
  const auto mis = generate_mvn_panel(misspecified_scenario(1, 1.1, 20000, 20000), 1);
  CHECK(stratum_cov(mis, 1) == doctest::Approx(0.2).epsilon(0.15));
  CHECK(stratum_cov(mis, 0) == doctest::Approx(0.1).epsilon(0.25));
}

TEST_CASE("closed-form ROC anchors") {
  Matrix one(1, 1);
  one(0, 0) = 1;
  CHECK(closed_form_roc(Vector::Constant(1, 1.0), one, 0.1) == doctest::Approx(0.389).epsilon(1e-3));
  CHECK(closed_form_roc(Vector::Zero(2), Matrix::Identity(2, 2), 0.3) == doctest::Approx(0.3));
  Matrix cov{{1, 0.2}, {0.2, 1}};
  const double full = closed_form_roc(Vector{{1, 1.1}}, cov, 0.1);
  CHECK(full == doctest::Approx(0.530).epsilon(2e-3));
  CHECK(full - closed_form_roc(Vector::Constant(1, 1.0), one, 0.1) ==
        doctest::Approx(0.141).epsilon(5e-3));
  CHECK_THROWS_AS(closed_form_roc(Vector::Constant(1, 1.0), one, 0.0), DomainError);
}

TEST_CASE("invalid scenarios are rejected") {
  auto c = correct_model_scenario(1, 1.1, 50, 50);
  c.cov_case(0, 1) = 0.9;  // asymmetric
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = correct_model_scenario(1, 1.1, 50, 50);
  c.cov_control = Matrix{{1, 2}, {2, 1}};
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = correct_model_scenario(1, 1.1, 50, 50);
  c.mixture_gamma = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("same seed gives the same panel") {
  const auto c = misspecified_scenario(1, 1.5, 40, 30);
  const auto a = generate_mvn_panel(c, 77);
  const auto b = generate_mvn_panel(c, 77);
  CHECK(a.markers == b.markers);
  CHECK(a.labels == b.labels);
}

TEST_CASE("mixture draws flag the candidate") {
  auto c = misspecified_scenario(1, 1.5, 30, 30);
  c.mixture_gamma = 1.0;
  CHECK(generate_mvn_panel(c, 3).candidate_is_null.value());
  c.mixture_gamma = 0.0;
  CHECK_FALSE(generate_mvn_panel(c, 3).candidate_is_null.value());
}

TEST_CASE("redraw_candidate keeps established columns") {
  const auto c = misspecified_scenario(1, 1.5, 50, 50);
  const auto base = generate_mvn_panel(c, 8);
  Rng rng(2);
  const auto d = redraw_candidate(base, c, rng);
  CHECK(d.markers.col(0) == base.markers.col(0));
  CHECK(d.markers.col(1) != base.markers.col(1));
  CHECK(d.labels == base.labels);
}

TEST_CASE("group assignment is stratified and balanced") {
  auto d = generate_mvn_panel(misspecified_scenario(1, 1.5, 101, 60), 1);
  assign_groups(d, 3, 11);
  for (int g = 0; g < 3; ++g) {
    const auto m = group_members(d, g);
    int cases = 0;
    for (int i : m) cases += d.labels[i];
    CHECK(std::abs(cases - 101 / 3.0) < 1.0);
    CHECK(std::abs(static_cast<int>(m.size()) - cases - 20) == 0);
  }
}

TEST_CASE("csv loading") {
  const std::string path = tmp("five.csv");
  {
    std::ofstream out(path);
    out << "id,label,x,y\n1,1,1.5,2\n2,1,2.5,3\n3,1,0.5,1\n4,0,1,4\n5,0,2,5\n";
  }
  const auto d = load_csv(path, "label", {"x", "y"});
  CHECK(d.n_cases() == 3);
  CHECK(d.n_controls() == 2);
  CHECK(d.markers(1, 0) == 2.5);

  const std::string bad = tmp("zero.csv");
  {
    std::ofstream out(bad);
    out << "label,x\n1,1\n0,0\n";
  }
  try {
    load_csv(bad, "label", {"x"}, {"x"});
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.row() == 2);
  }
  CHECK_THROWS_AS(load_csv(path, "nolabel", {"x"}), ParseError);
  CHECK_THROWS_AS(load_csv(tmp("missing.csv"), "label", {"x"}), IoError);
}

TEST_CASE("csv round trip is exact") {
  const auto d = generate_mvn_panel(misspecified_scenario(1, 1.5, 25, 25), 4);
  const std::string path = tmp("roundtrip.csv");
  write_csv(d, path);
  const auto back = load_csv(path, "label", d.column_names);
  CHECK(back.markers == d.markers);
  CHECK(back.labels == d.labels);
}
