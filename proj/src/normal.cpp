#include "seqroc/normal.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <numbers>

#include "seqroc/errors.hpp"

namespace seqroc {

double norm_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double norm_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double norm_quantile(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("norm_quantile: p outside [0,1]");
  if (p == 0.0) return -kInf;
  if (p == 1.0) return kInf;
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double norm_isf(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("norm_isf: p outside [0,1]");
  if (p == 0.0) return kInf;
  if (p == 1.0) return -kInf;
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

}  // namespace seqroc
