#pragma once

#include <optional>
#include <span>
#include <vector>

#include "seqroc/scenario.hpp"

namespace seqroc {

struct FitOptions {
  /// Convergence when max |sum_i x~_i (D_i - p_i)| <= tol.
  double tol = 1e-8;
  int max_iter = 100;
  /// |alpha + x'beta| above this while unconverged is reported as separation.
  double separation_eta = 30.0;
  /// Starting coefficients (intercept first); zero when absent.
  std::optional<Vector> start;
};

/// Logistic working-model fit. inv_information is the inverse of
/// sum_i x~_i x~_i' p_i (1 - p_i) with x~ = (1, X), intercept first.
struct ModelFit {
  double intercept = 0.0;
  Vector slopes;
  Vector fitted_probs;
  Matrix inv_information;
  bool converged = false;
  int iterations = 0;
  double log_likelihood = 0.0;
  double score_max_norm = 0.0;
  /// Log-likelihood at the start point and after every accepted Newton step.
  std::vector<double> loglik_trace;

  int dims() const { return static_cast<int>(slopes.size()); }
  Vector coefficients() const;
};

/// Newton-Raphson with step halving from the zero vector.
/// Throws SeparationError, SingularDesignError, or PreconditionError.
ModelFit fit_logistic(const Matrix& panel, std::span<const int> labels,
                      const FitOptions& options = {});

/// Row i: slope coordinates of inv_information * x~_i (D_i - p_i). The
/// intercept is carried jointly through the full information matrix.
Matrix influence_core(const ModelFit& fit, const Matrix& panel, std::span<const int> labels);

}  // namespace seqroc
