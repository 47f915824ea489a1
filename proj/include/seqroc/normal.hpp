#pragma once

#include <limits>

namespace seqroc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Standard normal density.
double norm_pdf(double x);

/// Standard normal CDF, accurate in both tails.
double norm_cdf(double x);

/// Upper tail 1 - Phi(x).
double norm_sf(double x);

/// Inverse of norm_cdf. Throws DomainError outside [0, 1]; 0 and 1 map to -inf and +inf.
double norm_quantile(double p);

/// Inverse of norm_sf.
double norm_isf(double p);

}  // namespace seqroc
