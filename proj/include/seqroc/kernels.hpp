#pragma once

// Data-parallel inner loops. The default versions split the input into fixed
// blocks, reduce each block (in parallel under OpenMP) and then add the block
// sums in order, so the result is bit-identical for any thread count. The
// `serial` namespace holds the plain single-loop reference used by tests and
// the benchmark.

#include <cstddef>
#include <exception>
#include <span>
#include <type_traits>
#include <vector>

namespace seqroc::kernels {

inline constexpr std::size_t kBlock = 1024;
/// Inputs shorter than this never spawn threads.
inline constexpr std::size_t kParallelThreshold = 8192;

/// sum_i phi((x - s_i) / bw)
double kernel_density_sum(std::span<const double> samples, double x, double bw);

/// sum_i Phi((s_i - u) / bw): smoothed count of scores exceeding u.
double smoothed_exceedance_sum(std::span<const double> scores, double u, double bw);

/// #{i : s_i > u}
std::size_t count_greater(std::span<const double> scores, double u);

/// Number of OpenMP threads that `for_each_index` would use for `workers`
/// (<= 0 means the runtime default).
int resolve_workers(int workers);

namespace detail {
void run_indexed(std::size_t n, int workers, void (*body)(std::size_t, void*), void* ctx,
                 std::vector<std::exception_ptr>& errors);
}

/// Calls `fn(i)` for every i in [0, n) on up to `workers` OpenMP threads.
/// `fn` must only write state owned by index i. The first exception (lowest
/// index) is rethrown after the loop.
template <class Fn>
void for_each_index(std::size_t n, int workers, Fn&& fn) {
  using F = std::remove_reference_t<Fn>;
  std::vector<std::exception_ptr> errors(n);
  auto trampoline = [](std::size_t i, void* ctx) { (*static_cast<F*>(ctx))(i); };
  detail::run_indexed(n, workers, trampoline, const_cast<void*>(static_cast<const void*>(&fn)),
                      errors);
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace serial {
double kernel_density_sum(std::span<const double> samples, double x, double bw);
double smoothed_exceedance_sum(std::span<const double> scores, double u, double bw);
std::size_t count_greater(std::span<const double> scores, double u);

template <class Fn>
void for_each_index(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}
}  // namespace serial

}  // namespace seqroc::kernels
