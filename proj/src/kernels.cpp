#include "seqroc/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>

namespace seqroc::kernels {
namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

inline double phi_unnorm(double z) { return std::exp(-0.5 * z * z); }
inline double Phi(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Blocked reduction: block sums are computed independently and added in order.
template <class T, class Term>
T blocked_sum(std::size_t n, Term term) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  if (nblocks <= 1) {
    T acc{};
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
  }
  std::vector<T> partial(nblocks, T{});
  const bool go_parallel = n >= kParallelThreshold && !omp_in_parallel();
#pragma omp parallel for schedule(static) if (go_parallel)
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::size_t lo = b * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    T acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[b] = acc;
  }
  T total{};
  for (const T& p : partial) total += p;
  return total;
}

}  // namespace

double kernel_density_sum(std::span<const double> samples, double x, double bw) {
  const double inv = 1.0 / bw;
  return kInvSqrt2Pi * blocked_sum<double>(samples.size(), [&](std::size_t i) {
           return phi_unnorm((x - samples[i]) * inv);
         });
}

double smoothed_exceedance_sum(std::span<const double> scores, double u, double bw) {
  const double inv = 1.0 / bw;
  return blocked_sum<double>(scores.size(),
                             [&](std::size_t i) { return Phi((scores[i] - u) * inv); });
}

std::size_t count_greater(std::span<const double> scores, double u) {
  return blocked_sum<std::size_t>(scores.size(), [&](std::size_t i) {
    return static_cast<std::size_t>(scores[i] > u);
  });
}

int resolve_workers(int workers) { return workers > 0 ? workers : omp_get_max_threads(); }

namespace detail {
void run_indexed(std::size_t n, int workers, void (*body)(std::size_t, void*), void* ctx,
                 std::vector<std::exception_ptr>& errors) {
  const int threads = resolve_workers(workers);
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i), ctx);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
}
}  // namespace detail

namespace serial {

double kernel_density_sum(std::span<const double> samples, double x, double bw) {
  double acc = 0.0;
  for (double s : samples) acc += kInvSqrt2Pi * std::exp(-0.5 * ((x - s) / bw) * ((x - s) / bw));
  return acc;
}

double smoothed_exceedance_sum(std::span<const double> scores, double u, double bw) {
  double acc = 0.0;
  for (double s : scores) acc += Phi((s - u) / bw);
  return acc;
}

std::size_t count_greater(std::span<const double> scores, double u) {
  std::size_t c = 0;
  for (double s : scores) c += s > u ? 1 : 0;
  return c;
}

}  // namespace serial
}  // namespace seqroc::kernels
