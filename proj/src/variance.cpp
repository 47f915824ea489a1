#include "seqroc/variance.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "seqroc/errors.hpp"
#include "seqroc/kernels.hpp"
#include "seqroc/normal.hpp"
#include "seqroc/roc.hpp"

namespace seqroc {
namespace {

// Linear-interpolation sample quantile (type 7) of sorted data.
double sorted_quantile(const std::vector<double>& sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct SplitScores {
  std::vector<double> cases;
  std::vector<double> controls;
};

SplitScores split(const Vector& scores, std::span<const int> labels) {
  SplitScores out;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (labels[i] == 1 ? out.cases : out.controls).push_back(scores[static_cast<Eigen::Index>(i)]);
  return out;
}

// Case/control sub-matrices in the same order as split().
void split_rows(const Matrix& panel, std::span<const int> labels, Matrix& cases, Matrix& controls) {
  Eigen::Index n1 = 0;
  for (int d : labels) n1 += d;
  cases.resize(n1, panel.cols());
  controls.resize(panel.rows() - n1, panel.cols());
  Eigen::Index a = 0, b = 0;
  for (Eigen::Index i = 0; i < panel.rows(); ++i) {
    if (labels[static_cast<std::size_t>(i)] == 1)
      cases.row(a++) = panel.row(i);
    else
      controls.row(b++) = panel.row(i);
  }
}

std::span<const double> as_span(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples) {
  const std::size_t m = samples.size();
  if (m < 2) throw DegenerateSampleError("bandwidth: need at least two samples");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / static_cast<double>(m - 1));
  if (!(sd > 0.0) || !std::isfinite(sd))
    throw DegenerateSampleError("bandwidth: sample has zero spread");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) spread = sd;
  return 0.9 * spread * std::pow(static_cast<double>(m), -0.2);
}

double kde_at(std::span<const double> samples, double x) {
  return kde_at(samples, x, silverman_bandwidth(samples));
}

double kde_at(std::span<const double> samples, double x, double bandwidth) {
  if (samples.empty()) throw DegenerateSampleError("kde: no samples");
  if (!(bandwidth > 0.0)) throw DegenerateSampleError("kde: bandwidth must be positive");
  return kernels::kernel_density_sum(samples, x, bandwidth) /
         (static_cast<double>(samples.size()) * bandwidth);
}

double smoothed_survival(std::span<const double> scores, double u, double bandwidth) {
  return kernels::smoothed_exceedance_sum(scores, u, bandwidth) /
         static_cast<double>(scores.size());
}

double smoothed_survival_quantile(std::span<const double> scores, double t, double bandwidth) {
  if (scores.empty()) throw DegenerateSampleError("smoothed quantile: no scores");
  if (!(t > 0.0 && t < 1.0)) throw DomainError("smoothed quantile: t must lie in (0,1)");
  const auto [mn, mx] = std::minmax_element(scores.begin(), scores.end());
  double lo = *mn - 12.0 * bandwidth;  // survival ~ 1
  double hi = *mx + 12.0 * bandwidth;  // survival ~ 0
  // Start from the empirical cutoff; Newton steps, falling back to bisection
  // whenever a step leaves the bracket.
  double u = control_quantile(scores, t);
  const double tol = 1e-13 * std::max(1.0, std::abs(u)) + 1e-15;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = smoothed_survival(scores, u, bandwidth) - t;
    if (f > 0.0)
      lo = u;
    else
      hi = u;
    const double slope = -kde_at(scores, u, bandwidth);
    double next = (slope < 0.0) ? u - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= tol || hi - lo <= tol) return next;
    u = next;
  }
  return u;
}

Gradients gradients_gh(const ModelFit& fit, const Matrix& panel, std::span<const int> labels,
                       double t, const GradientOptions& options) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("gradients_gh: t must lie in (0,1)");
  if (panel.cols() != fit.slopes.size()) throw PreconditionError("gradients_gh: dimension mismatch");
  Matrix xcase, xcontrol;
  split_rows(panel, labels, xcase, xcontrol);
  const Vector s1 = xcase * fit.slopes;
  const Vector s0 = xcontrol * fit.slopes;

  Gradients out;
  out.case_bandwidth = options.case_bandwidth.value_or(silverman_bandwidth(as_span(s1)));
  out.control_bandwidth = options.control_bandwidth.value_or(silverman_bandwidth(as_span(s0)));
  out.threshold = control_quantile(as_span(s0), t);
  out.f_case_at_threshold = kde_at(as_span(s1), out.threshold, out.case_bandwidth);

  const Eigen::Index d = fit.slopes.size();
  out.g.resize(d);
  out.h.resize(d);
  Vector shifted1(s1.size()), shifted0(s0.size());
  for (Eigen::Index j = 0; j < d; ++j) {
    const double step = options.rel_step * (1.0 + std::abs(fit.slopes[j]));
    double surv[2], cut[2];
    for (int side = 0; side < 2; ++side) {
      const double e = side == 0 ? step : -step;
      shifted1 = s1 + e * xcase.col(j);
      shifted0 = s0 + e * xcontrol.col(j);
      surv[side] = smoothed_survival(as_span(shifted1), out.threshold, out.case_bandwidth);
      cut[side] = smoothed_survival_quantile(as_span(shifted0), t, out.control_bandwidth);
    }
    out.g[j] = (surv[0] - surv[1]) / (2.0 * step);
    out.h[j] = -out.f_case_at_threshold * (cut[0] - cut[1]) / (2.0 * step);
  }
  return out;
}

InfluencePieces influence_pieces(const ModelFit& fit, const Matrix& panel,
                                 std::span<const int> labels, double t) {
  const Eigen::Index n = panel.rows();
  if (static_cast<std::size_t>(n) != labels.size())
    throw PreconditionError("influence_pieces: label count mismatch");
  const Vector scores = combination_scores(fit, panel);
  const SplitScores sp = split(scores, labels);
  if (sp.cases.size() < 2 || sp.controls.size() < 2)
    throw DegenerateSampleError("influence_pieces: need two cases and two controls");

  const Gradients grad = gradients_gh(fit, panel, labels, t);
  InfluencePieces out;
  out.g = grad.g;
  out.h = grad.h;
  out.threshold = grad.threshold;
  out.case_bandwidth = grad.case_bandwidth;
  out.control_bandwidth = grad.control_bandwidth;
  out.f_d1_at_u = grad.f_case_at_threshold;
  out.f_d0_at_u = kde_at(sp.controls, out.threshold, grad.control_bandwidth);
  out.case_survival = static_cast<double>(kernels::count_greater(sp.cases, out.threshold)) /
                      static_cast<double>(sp.cases.size());

  if (out.f_d0_at_u > 0.0) {
    out.density_ratio = out.f_d1_at_u / out.f_d0_at_u;
  } else if (out.f_d1_at_u > 0.0) {
    out.density_ratio = kInf;
  } else {
    throw DegenerateSampleError("influence_pieces: both densities vanish at the cutoff");
  }
  if (out.density_ratio > kMaxDensityRatio) {
    out.density_ratio = kMaxDensityRatio;
    out.ratio_clamped = true;
  }

  const double pi_case = static_cast<double>(sp.cases.size()) / static_cast<double>(n);
  const Matrix core = influence_core(fit, panel, labels);
  const Vector a24 = static_cast<double>(n) * (core * (grad.g + grad.h));

  out.a1_term = Vector::Zero(n);
  out.a3_term = Vector::Zero(n);
  out.a2_plus_a4_term = a24;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = scores[i];
    if (labels[static_cast<std::size_t>(i)] == 1) {
      out.a1_term[i] = ((s > out.threshold ? 1.0 : 0.0) - out.case_survival) / pi_case;
    } else {
      out.a3_term[i] = ((s <= out.threshold ? 1.0 : 0.0) - (1.0 - t)) * out.density_ratio /
                       (1.0 - pi_case);
    }
  }
  if (!out.total().allFinite())
    throw NumericalError("influence_pieces: non-finite influence values");
  return out;
}

VarianceEstimate sigma_components(const ModelFit& fit_full, const ModelFit& fit_restricted,
                                  const Matrix& panel_full, const Matrix& panel_restricted,
                                  std::span<const int> labels, double t) {
  if (panel_full.rows() != panel_restricted.rows())
    throw PreconditionError("sigma_components: panels differ in row count");
  const InfluencePieces pf = influence_pieces(fit_full, panel_full, labels, t);
  const InfluencePieces pr = influence_pieces(fit_restricted, panel_restricted, labels, t);
  const double n = static_cast<double>(panel_full.rows());

  VarianceEstimate v;
  v.per_subject_full = pf.total();
  v.per_subject_restricted = pr.total();
  v.sigma_f = v.per_subject_full.squaredNorm() / (n * n);
  v.sigma_r = v.per_subject_restricted.squaredNorm() / (n * n);
  v.sigma_fr = v.per_subject_full.dot(v.per_subject_restricted) / (n * n);
  // Gram form keeps the difference non-negative up to rounding.
  v.sigma_delta = (v.per_subject_full - v.per_subject_restricted).squaredNorm() / (n * n);
  v.bandwidths = {pf.case_bandwidth, pf.control_bandwidth, pr.case_bandwidth,
                  pr.control_bandwidth};
  v.ratio_clamped = pf.ratio_clamped || pr.ratio_clamped;
  return v;
}

VarianceEstimate sigma_single_panel(const ModelFit& fit, const Matrix& panel,
                                    std::span<const int> labels, double t) {
  const InfluencePieces pf = influence_pieces(fit, panel, labels, t);
  const double n = static_cast<double>(panel.rows());
  VarianceEstimate v;
  v.per_subject_full = pf.total();
  v.sigma_f = v.per_subject_full.squaredNorm() / (n * n);
  v.sigma_delta = v.sigma_f;
  v.bandwidths.case_full = pf.case_bandwidth;
  v.bandwidths.control_full = pf.control_bandwidth;
  v.ratio_clamped = pf.ratio_clamped;
  return v;
}

}  // namespace seqroc
