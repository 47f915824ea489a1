#include "seqroc/roc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "seqroc/errors.hpp"
#include "seqroc/kernels.hpp"

namespace seqroc {

Vector combination_scores(const ModelFit& fit, const Matrix& panel) {
  if (panel.cols() != fit.slopes.size())
    throw PreconditionError("combination_scores: panel columns do not match slope length");
  return panel * fit.slopes;
}

std::size_t cutoff_rank(double t, std::size_t n_controls) {
  if (!(t >= 0.0 && t < 1.0)) throw DomainError("cutoff rank: t must lie in [0,1)");
  if (n_controls == 0) throw PreconditionError("cutoff rank: no controls");
  if (t == 0.0) return 1;
  // Guard against t * n landing a hair above an integer through rounding.
  const double tn = t * static_cast<double>(n_controls);
  auto s = static_cast<std::size_t>(std::ceil(tn - 1e-9 * std::max(1.0, tn)));
  return std::clamp<std::size_t>(s, 1, n_controls);
}

double control_quantile(std::span<const double> control_scores, double t) {
  if (control_scores.empty()) throw PreconditionError("control_quantile: empty controls");
  const std::size_t s = cutoff_rank(t, control_scores.size());
  std::vector<double> sorted(control_scores.begin(), control_scores.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(s - 1),
                   sorted.end(), std::greater<>());
  return sorted[s - 1];
}

RocEstimate empirical_roc(std::span<const double> case_scores,
                          std::span<const double> control_scores, double t) {
  if (case_scores.empty() || control_scores.empty())
    throw PreconditionError("empirical_roc: empty score vector");
  RocEstimate est;
  est.t = t;
  est.threshold = control_quantile(control_scores, t);
  est.n_cases_used = static_cast<int>(case_scores.size());
  est.n_controls_used = static_cast<int>(control_scores.size());
  est.value = static_cast<double>(kernels::count_greater(case_scores, est.threshold)) /
              static_cast<double>(case_scores.size());
  return est;
}

RocEstimate empirical_roc(const Vector& scores, std::span<const int> labels, double t) {
  if (static_cast<std::size_t>(scores.size()) != labels.size())
    throw PreconditionError("empirical_roc: label count mismatch");
  std::vector<double> cases, controls;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (labels[i] == 1 ? cases : controls).push_back(scores[static_cast<Eigen::Index>(i)]);
  return empirical_roc(cases, controls, t);
}

}  // namespace seqroc
