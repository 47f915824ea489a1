#include "seqroc/boundary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "seqroc/csv.hpp"
#include "seqroc/errors.hpp"
#include "seqroc/normal.hpp"

namespace seqroc {

std::string to_string(Spending s) { return s == Spending::obf ? "obf" : "pocock"; }

std::string to_string(Stopping s) {
  switch (s) {
    case Stopping::both:
      return "both";
    case Stopping::futility_only:
      return "futility";
    case Stopping::efficacy_only:
      return "efficacy";
  }
  return "both";
}

Spending parse_spending(const std::string& name) {
  if (name == "obf" || name == "OBF" || name == "obrien-fleming") return Spending::obf;
  if (name == "pocock" || name == "Pocock") return Spending::pocock;
  throw ConfigError("unknown spending family '" + name + "' (expected obf or pocock)");
}

Stopping parse_stopping(const std::string& name) {
  if (name == "both") return Stopping::both;
  if (name == "futility" || name == "futility_only") return Stopping::futility_only;
  if (name == "efficacy" || name == "efficacy_only") return Stopping::efficacy_only;
  throw ConfigError("unknown stopping mode '" + name + "' (expected both, futility, efficacy)");
}

double spending(double alpha, double t_frac, Spending family) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("spending: alpha must lie in (0,1)");
  if (!(t_frac > 0.0 && t_frac <= 1.0)) throw DomainError("spending: t_frac must lie in (0,1]");
  if (family == Spending::pocock) return alpha * std::log1p((std::numbers::e - 1.0) * t_frac);
  const double z = norm_isf(alpha / 2.0);
  return 2.0 * norm_sf(z / std::sqrt(t_frac));
}

namespace {

struct GaussLegendre {
  const double* w;
  const double* x;
  int n;
};

// Half-rules on (-1, 1): nodes symmetric around 0.
constexpr std::array<double, 3> kW6{0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
constexpr std::array<double, 3> kX6{0.9324695142031522, 0.6612093864662647, 0.2386191860831970};
constexpr std::array<double, 6> kW12{0.04717533638651177, 0.1069393259953183,
                                     0.1600783285433464,  0.2031674267230659,
                                     0.2334925365383547,  0.2491470458134029};
constexpr std::array<double, 6> kX12{0.9815606342467191, 0.9041172563704750, 0.7699026741943050,
                                     0.5873179542866171, 0.3678314989981802, 0.1252334085114692};
constexpr std::array<double, 10> kW20{
    0.01761400713915212, 0.04060142980038694, 0.06267204833410906, 0.08327674157670475,
    0.1019301198172404,  0.1181945319615184,  0.1316886384491766,  0.1420961093183821,
    0.1491729864726037,  0.1527533871307259};
constexpr std::array<double, 10> kX20{
    0.9931285991850949, 0.9639719272779138, 0.9122344282513259, 0.8391169718222188,
    0.7463319064601508, 0.6360536807265150, 0.5108670019508271, 0.3737060887154196,
    0.2277858511416451, 0.07652652113349733};

GaussLegendre rule_for(double abs_r) {
  if (abs_r < 0.3) return {kW6.data(), kX6.data(), 3};
  if (abs_r < 0.75) return {kW12.data(), kX12.data(), 6};
  return {kW20.data(), kX20.data(), 10};
}

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

double bvn_upper(double h, double k, double rho) {
  if (!(std::abs(rho) < 1.0)) throw DomainError("bvn_upper: |rho| must be < 1");
  if (std::isnan(h) || std::isnan(k)) throw DomainError("bvn_upper: NaN limit");
  if (h == kInf || k == kInf) return 0.0;
  if (h == -kInf) return k == -kInf ? 1.0 : norm_sf(k);
  if (k == -kInf) return norm_sf(h);
  if (rho == 0.0) return norm_sf(h) * norm_sf(k);

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const GaussLegendre gl = rule_for(std::abs(rho));
  double hk = h * k;
  double bvn = 0.0;

  if (std::abs(rho) < 0.925) {
    // Integrate over the arcsine of the correlation.
    const double hs = (h * h + k * k) / 2.0;
    const double asr = std::asin(rho) / 2.0;
    for (int i = 0; i < gl.n; ++i) {
      for (double sign : {-1.0, 1.0}) {
        const double sn = std::sin(asr * (1.0 + sign * gl.x[i]));
        bvn += gl.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
      }
    }
    return clamp01(bvn * asr / two_pi + norm_sf(h) * norm_sf(k));
  }

  if (rho < 0.0) {
    k = -k;
    hk = -hk;
  }
  const double as = (1.0 - rho) * (1.0 + rho);
  double a = std::sqrt(as);
  const double bs = (h - k) * (h - k);
  const double c = (4.0 - hk) / 8.0;
  const double d = (12.0 - hk) / 16.0;
  bvn = a * std::exp(-(bs / as + hk) / 2.0) *
        (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
  if (hk > -160.0) {
    const double b = std::sqrt(bs);
    bvn -= std::exp(-hk / 2.0) * std::sqrt(two_pi) * norm_cdf(-b / a) * b *
           (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
  }
  a /= 2.0;
  for (int i = 0; i < gl.n; ++i) {
    for (double sign : {-1.0, 1.0}) {
      const double xs = std::pow(a * (1.0 + sign * gl.x[i]), 2);
      const double rs = std::sqrt(1.0 - xs);
      bvn += a * gl.w[i] *
             (std::exp(-bs / (2.0 * xs) - hk / (1.0 + rs)) / rs -
              std::exp(-(bs / xs + hk) / 2.0) * (1.0 + c * xs * (1.0 + d * xs)));
    }
  }
  bvn = -bvn / two_pi;

  if (rho > 0.0) {
    bvn += norm_sf(std::max(h, k));
  } else {
    bvn = -bvn;
    if (k > h) bvn += h < 0.0 ? norm_cdf(k) - norm_cdf(h) : norm_sf(h) - norm_sf(k);
  }
  return clamp01(bvn);
}

namespace {

// P(lo < Z1 < hi, Z2 >= k) under the standard bivariate normal.
double band_upper(double lo, double hi, double k, double rho) {
  if (!(lo < hi)) return 0.0;
  return std::max(0.0, bvn_upper(lo, k, rho) - bvn_upper(hi, k, rho));
}

// Root of a decreasing function on [lo, hi] by bisection.
double bisect_decreasing(const std::function<double(double)>& f, double lo, double hi,
                         double tol) {
  double flo = f(lo), fhi = f(hi);
  if (!(flo >= 0.0 && fhi <= 0.0))
    throw NumericalError("solve_boundaries: no root in the bracket [0, 10]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BoundarySet BoundarySet::manual(double a1, double b1, double b2, double info_frac, double alpha) {
  if (!(info_frac > 0.0 && info_frac < 1.0)) throw ConfigError("boundaries: info_frac in (0,1)");
  if (a1 > b1) throw ConfigError("boundaries: a1 must not exceed b1");
  BoundarySet b;
  b.a1 = a1;
  b.b1 = b1;
  b.b2 = b2;
  b.alpha = alpha;
  b.info_frac = info_frac;
  b.rho = std::sqrt(info_frac);
  b.alpha1 = norm_sf(b1);
  b.alpha2 = band_upper(a1, b1, b2, b.rho);
  b.delta1 = 2.0 * b2;
  b.custom = true;
  return b;
}

BoundarySet solve_boundaries(double alpha, double info_frac, Spending family, Stopping stopping,
                             const SolveOptions& options) {
  if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("boundaries: alpha must lie in (0, 0.5)");
  if (!(info_frac > 0.0 && info_frac < 1.0))
    throw ConfigError("boundaries: info_frac must lie in (0,1)");

  BoundarySet out;
  out.alpha = alpha;
  out.info_frac = info_frac;
  out.rho = std::sqrt(info_frac);
  out.spending = family;
  out.stopping = stopping;
  out.alpha1 = spending(alpha, info_frac, family);
  out.alpha2 = alpha - out.alpha1;
  const double b1 = norm_isf(out.alpha1);
  const double sq = std::sqrt(info_frac);
  const double rho = out.rho;

  if (options.resolve_single_sided && stopping == Stopping::efficacy_only) {
    // Only the efficacy boundary at stage 1: P(Z1 < b1, Z2 >= b2) = alpha2.
    out.b1 = b1;
    out.a1 = -kInf;
    out.b2 = bisect_decreasing(
        [&](double b2) { return band_upper(-kInf, b1, b2, rho) - out.alpha2; }, 0.0, 10.0,
        options.tol);
  } else if (options.resolve_single_sided && stopping == Stopping::futility_only) {
    // No efficacy stop: all of alpha goes to stage 2, with the futility bound
    // tied to b2 through the symmetric relation.
    out.b1 = kInf;
    out.alpha1 = 0.0;
    out.alpha2 = alpha;
    out.b2 = bisect_decreasing(
        [&](double b2) { return band_upper(2.0 * b2 * sq - b1, kInf, b2, rho) - alpha; }, 0.0,
        10.0, options.tol);
    out.a1 = 2.0 * out.b2 * sq - b1;
  } else {
    out.b2 = bisect_decreasing(
        [&](double b2) { return band_upper(2.0 * b2 * sq - b1, b1, b2, rho) - out.alpha2; }, 0.0,
        10.0, options.tol);
    out.b1 = b1;
    out.a1 = 2.0 * out.b2 * sq - b1;
    if (stopping == Stopping::efficacy_only) out.a1 = -kInf;
    if (stopping == Stopping::futility_only) out.b1 = kInf;
  }
  out.delta1 = 2.0 * out.b2;
  out.resolved_single_sided = options.resolve_single_sided && stopping != Stopping::both;
  return out;
}

double rejection_probability(const BoundarySet& b, double theta) {
  const double m1 = theta * std::sqrt(b.info_frac);
  const double m2 = theta;
  return norm_sf(b.b1 - m1) + band_upper(b.a1 - m1, b.b1 - m1, b.b2 - m2, b.rho);
}

double stage1_stop_probability(const BoundarySet& b, double theta) {
  const double m1 = theta * std::sqrt(b.info_frac);
  return norm_sf(b.b1 - m1) + norm_cdf(b.a1 - m1);
}

std::vector<std::string> boundary_csv_header() {
  return {"a1",      "b1",     "b2",       "alpha",    "alpha1", "alpha2",
          "lambda",  "rho",    "spending", "stopping", "delta1"};
}

std::vector<std::string> boundary_csv_row(const BoundarySet& b) {
  using csv::format_sig;
  const int p = 10;
  return {format_sig(b.a1, p),
          format_sig(b.b1, p),
          format_sig(b.b2, p),
          format_sig(b.alpha, p),
          format_sig(b.alpha1, p),
          format_sig(b.alpha2, p),
          format_sig(b.info_frac, p),
          format_sig(b.rho, p),
          b.custom ? "manual" : to_string(b.spending),
          b.custom ? "manual" : to_string(b.stopping),
          format_sig(b.delta1, p)};
}

}  // namespace seqroc
