#pragma once

#include <optional>
#include <span>

#include "seqroc/logistic.hpp"

namespace seqroc {

/// 0.9 * min(sd, IQR / 1.34) * m^(-1/5). Falls back to sd when the IQR is
/// zero; throws DegenerateSampleError when the sample has no spread.
double silverman_bandwidth(std::span<const double> samples);

/// Gaussian kernel density at x with the Silverman bandwidth.
double kde_at(std::span<const double> samples, double x);
double kde_at(std::span<const double> samples, double x, double bandwidth);

/// Smoothed survival (1/m) sum_i Phi((s_i - u) / bw).
double smoothed_survival(std::span<const double> scores, double u, double bandwidth);

/// Solves smoothed_survival(scores, u, bw) = t for u.
double smoothed_survival_quantile(std::span<const double> scores, double t, double bandwidth);

struct GradientOptions {
  /// Finite-difference step for slope j is rel_step * (1 + |beta_j|).
  double rel_step = 1e-3;
  /// Kernel bandwidths for case / control scores; Silverman at beta-hat when absent.
  std::optional<double> case_bandwidth;
  std::optional<double> control_bandwidth;
};

/// Slope derivatives of the case survival at the fixed cutoff (g) and of the
/// cutoff's effect through the control quantile (h).
struct Gradients {
  Vector g;
  Vector h;
  double threshold = 0.0;  // empirical control cutoff at beta-hat
  double f_case_at_threshold = 0.0;
  double case_bandwidth = 0.0;
  double control_bandwidth = 0.0;
};

Gradients gradients_gh(const ModelFit& fit, const Matrix& panel, std::span<const int> labels,
                       double t, const GradientOptions& options = {});

/// Per-subject influence decomposition of ROC-hat(t) for one model.
struct InfluencePieces {
  Vector a1_term;          // cases: (I(s > u) - S1(u)) / pi
  Vector a3_term;          // controls: (I(s <= u) - (1 - t)) * f1/f0 / (1 - pi)
  Vector a2_plus_a4_term;  // n * (g + h)' * influence_core_i
  Vector g;
  Vector h;
  double threshold = 0.0;
  double case_survival = 0.0;
  double f_d1_at_u = 0.0;
  double f_d0_at_u = 0.0;
  double density_ratio = 0.0;
  bool ratio_clamped = false;
  double case_bandwidth = 0.0;
  double control_bandwidth = 0.0;

  Vector total() const { return a1_term + a3_term + a2_plus_a4_term; }
};

inline constexpr double kMaxDensityRatio = 50.0;

InfluencePieces influence_pieces(const ModelFit& fit, const Matrix& panel,
                                 std::span<const int> labels, double t);

struct Bandwidths {
  double case_full = 0.0;
  double control_full = 0.0;
  double case_restricted = 0.0;
  double control_restricted = 0.0;
};

struct VarianceEstimate {
  double sigma_f = 0.0;
  double sigma_r = 0.0;
  double sigma_fr = 0.0;
  double sigma_delta = 0.0;  // sigma_f + sigma_r - 2 sigma_fr
  Vector per_subject_full;
  Vector per_subject_restricted;
  Bandwidths bandwidths;
  bool ratio_clamped = false;

  double reported_sigma_delta() const { return sigma_delta > 0.0 ? sigma_delta : 0.0; }
};

/// Plug-in variance of ROC_f-hat(t) - ROC_r-hat(t). Both fits must be
/// converged on the rows of `panel_full` / `panel_restricted`.
VarianceEstimate sigma_components(const ModelFit& fit_full, const ModelFit& fit_restricted,
                                  const Matrix& panel_full, const Matrix& panel_restricted,
                                  std::span<const int> labels, double t);

/// Single-panel variant: only sigma_f is populated (sigma_delta = sigma_f).
VarianceEstimate sigma_single_panel(const ModelFit& fit, const Matrix& panel,
                                    std::span<const int> labels, double t);

}  // namespace seqroc
