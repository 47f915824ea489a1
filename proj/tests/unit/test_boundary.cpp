#include "doctest.h"
#include "seqroc/boundary.hpp"
#include "seqroc/errors.hpp"
#include "seqroc/normal.hpp"

#include <cmath>
#include <numbers>

using namespace seqroc;

namespace {
// P(Z1 > h, Z2 > k) by composite Simpson over the first coordinate.
double bvn_quadrature(double h, double k, double rho) {
  const double lo = std::max(h, -12.0), hi = 12.0;
  const int n = 20000;
  const double step = (hi - lo) / n;
  const double s = std::sqrt(1 - rho * rho);
  auto f = [&](double x) { return norm_pdf(x) * norm_sf((k - rho * x) / s); };
  double acc = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4 : 2) * f(lo + i * step);
  return acc * step / 3;
}

// null rejection probability written out directly from the orthant function
double null_rejection(const BoundarySet& b) {
  const double stage1 = b.b1 == kInf ? 0.0 : norm_sf(b.b1);
  const double upper_b1 = b.b1 == kInf ? 0.0 : bvn_quadrature(b.b1, b.b2, b.rho);
  const double upper_a1 = b.a1 == -kInf ? norm_sf(b.b2) : bvn_quadrature(b.a1, b.b2, b.rho);
  return stage1 + upper_a1 - upper_b1;
}
}  // namespace

TEST_CASE("spending functions") {
  for (auto fam : {Spending::obf, Spending::pocock}) {
    CHECK(spending(0.05, 1.0, fam) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK_THROWS_AS(spending(0.05, 0.0, fam), DomainError);
  }
  CHECK(spending(0.05, 0.5, Spending::pocock) ==
        doctest::Approx(0.05 * std::log(1 + (std::numbers::e - 1) / 2)).epsilon(1e-14));
  CHECK(spending(0.05, 0.5, Spending::pocock) == doctest::Approx(0.03101).epsilon(1e-4));
  CHECK(spending(0.05, 0.5, Spending::obf) == doctest::Approx(0.005574596681).epsilon(1e-9));
}

TEST_CASE("bivariate normal orthant") {
  CHECK(bvn_upper(0, 0, 0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(bvn_upper(-kInf, -kInf, 0.3) == 1.0);
  CHECK(bvn_upper(kInf, 0.0, 0.3) == 0.0);
  for (double rho : {-0.9, -0.5, 0.0, 0.3, 0.5, 0.7071, 0.95})
    CHECK(bvn_upper(0, 0, rho) ==
          doctest::Approx(0.25 + std::asin(rho) / (2 * std::numbers::pi)).epsilon(1e-12));
  for (double rho : {-0.6, 0.2, 0.5773502692, 0.7071067812, 0.9})
    for (double h : {-1.5, -0.2, 0.4, 2.5})
      for (double k : {-0.7, 0.0, 1.8, 3.1})
        CHECK(std::abs(bvn_upper(h, k, rho) - bvn_quadrature(h, k, rho)) < 1e-10);
}

TEST_CASE("both-stopping boundaries satisfy the size and symmetry identities") {
  for (auto fam : {Spending::obf, Spending::pocock})
    for (double lam : {0.5, 1.0 / 3.0}) {
      const BoundarySet b = solve_boundaries(0.05, lam, fam, Stopping::both);
      CHECK(std::abs(null_rejection(b) - 0.05) < 1e-8);
      CHECK(b.a1 == doctest::Approx(2 * b.b2 * std::sqrt(lam) - b.b1).epsilon(1e-14));
      CHECK(b.a1 < b.b1);
      CHECK(b.b1 == doctest::Approx(norm_isf(b.alpha1)).epsilon(1e-12));
      CHECK(b.alpha1 + b.alpha2 == doctest::Approx(0.05));
      CHECK(b.delta1 == doctest::Approx(2 * b.b2));
      CHECK(rejection_probability(b, 0.0) == doctest::Approx(0.05).epsilon(1e-8));
      // symmetric design: type-II error at delta1 equals alpha
      CHECK(1 - rejection_probability(b, b.delta1) == doctest::Approx(0.05).epsilon(1e-6));
    }
  const BoundarySet b = solve_boundaries(0.05, 0.5, Spending::pocock, Stopping::both);
  CHECK(b.a1 == doctest::Approx(std::sqrt(2.0) * b.b2 - b.b1).epsilon(1e-14));
}

TEST_CASE("single-sided modes") {
  const BoundarySet both = solve_boundaries(0.05, 0.5, Spending::obf, Stopping::both);
  const BoundarySet eff = solve_boundaries(0.05, 0.5, Spending::obf, Stopping::efficacy_only);
  CHECK(eff.a1 == -kInf);
  CHECK(eff.b1 == both.b1);
  CHECK(eff.b2 == both.b2);
  const BoundarySet fut = solve_boundaries(0.05, 0.5, Spending::pocock, Stopping::futility_only);
  CHECK(fut.b1 == kInf);
  CHECK(null_rejection(fut) < 0.05);  // truncation is conservative

  SolveOptions re;
  re.resolve_single_sided = true;
  for (auto fam : {Spending::obf, Spending::pocock})
    for (auto mode : {Stopping::futility_only, Stopping::efficacy_only}) {
      const BoundarySet r = solve_boundaries(0.05, 0.5, fam, mode, re);
      CHECK(r.resolved_single_sided);
      CHECK(std::abs(null_rejection(r) - 0.05) < 1e-8);
    }
}

TEST_CASE("stop probabilities and degenerate designs") {
  const BoundarySet never = BoundarySet::manual(-kInf, kInf, 1.644853627);
  CHECK(stage1_stop_probability(never) == 0.0);
  CHECK(rejection_probability(never) == doctest::Approx(0.05).epsilon(1e-8));
  const BoundarySet always = BoundarySet::manual(0, 0, 0);
  CHECK(stage1_stop_probability(always) == doctest::Approx(1.0));
  const BoundarySet reject_all = BoundarySet::manual(-kInf, -kInf, 0);
  CHECK(rejection_probability(reject_all, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("invalid inputs and name parsing") {
  CHECK_THROWS_AS(solve_boundaries(0.0, 0.5, Spending::obf, Stopping::both), ConfigError);
  CHECK_THROWS_AS(solve_boundaries(0.05, 1.0, Spending::obf, Stopping::both), ConfigError);
  CHECK(parse_spending("pocock") == Spending::pocock);
  CHECK(parse_stopping("futility") == Stopping::futility_only);
  CHECK(parse_stopping("efficacy_only") == Stopping::efficacy_only);
  CHECK_THROWS_AS(parse_spending("haybittle"), ConfigError);
  CHECK(boundary_csv_header().size() == boundary_csv_row(solve_boundaries(
                                              0.05, 0.5, Spending::obf, Stopping::both))
                                             .size());
}
