#pragma once

#include <span>

#include "seqroc/logistic.hpp"

namespace seqroc {

/// Empirical ROC(t): fraction of case scores strictly above the control cutoff.
struct RocEstimate {
  double value = 0.0;
  double threshold = 0.0;  // control score cutoff u
  double t = 0.0;
  int n_cases_used = 0;
  int n_controls_used = 0;
};

/// X_i' beta for every row; the intercept is omitted (ROC is invariant to it).
Vector combination_scores(const ModelFit& fit, const Matrix& panel);

/// Rank s of the control cutoff in descending order: ceil(t * n0), or 1 at t = 0.
std::size_t cutoff_rank(double t, std::size_t n_controls);

/// s-th largest control score, s = cutoff_rank(t, n0). At most a fraction t of
/// controls lie strictly above the returned value.
double control_quantile(std::span<const double> control_scores, double t);

RocEstimate empirical_roc(std::span<const double> case_scores,
                          std::span<const double> control_scores, double t);

/// Splits `scores` by label and calls empirical_roc.
RocEstimate empirical_roc(const Vector& scores, std::span<const int> labels, double t);

}  // namespace seqroc
