#include "doctest.h"
#include "seqroc/kernels.hpp"

#include <random>
#include <stdexcept>

using namespace seqroc::kernels;

namespace {
std::vector<double> draws(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}
}  // namespace

TEST_CASE("blocked kernels agree with serial reference") {
  for (std::size_t n : {std::size_t{1}, std::size_t{1000}, std::size_t{9000}, std::size_t{50000}}) {
    const auto s = draws(n, 3);
    CHECK(kernel_density_sum(s, 0.2, 0.3) ==
          doctest::Approx(serial::kernel_density_sum(s, 0.2, 0.3)).epsilon(1e-12));
    CHECK(smoothed_exceedance_sum(s, -0.4, 0.1) ==
          doctest::Approx(serial::smoothed_exceedance_sum(s, -0.4, 0.1)).epsilon(1e-12));
    CHECK(count_greater(s, 0.5) == serial::count_greater(s, 0.5));
  }
}

TEST_CASE("blocked sums are identical for any worker count") {
  const auto s = draws(100000, 9);
  const double ref = serial::kernel_density_sum(s, 0.0, 0.25);
  const double blocked = kernel_density_sum(s, 0.0, 0.25);
  CHECK(blocked == doctest::Approx(ref).epsilon(1e-12));
  for (int workers : {1, 2, 4}) {
    std::vector<double> out(8);
    for_each_index(out.size(), workers,
                   [&](std::size_t i) { out[i] = kernel_density_sum(s, 0.0, 0.25); });
    for (double v : out) CHECK(v == blocked);
  }
}

TEST_CASE("for_each_index visits every index and rethrows the lowest failure") {
  std::vector<int> hit(500, 0);
  for_each_index(hit.size(), 2, [&](std::size_t i) { hit[i] += 1; });
  for (int h : hit) CHECK(h == 1);

  try {
    for_each_index(100, 2, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
}
