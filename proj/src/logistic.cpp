#include "seqroc/logistic.hpp"

#include <cmath>

#include "seqroc/errors.hpp"

namespace seqroc {
namespace {

Matrix design_with_intercept(const Matrix& panel) {
  Matrix x(panel.rows(), panel.cols() + 1);
  x.col(0).setOnes();
  x.rightCols(panel.cols()) = panel;
  return x;
}

inline double sigmoid(double eta) {
  if (eta >= 0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

// log(1 + exp(eta)) without overflow.
inline double softplus(double eta) {
  return std::max(eta, 0.0) + std::log1p(std::exp(-std::abs(eta)));
}

double log_likelihood(const Vector& eta, const Vector& y) {
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) ll += y[i] * eta[i] - softplus(eta[i]);
  return ll;
}

Vector labels_as_vector(std::span<const int> labels) {
  Vector y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = labels[i];
  return y;
}

}  // namespace

Vector ModelFit::coefficients() const {
  Vector c(slopes.size() + 1);
  c[0] = intercept;
  c.tail(slopes.size()) = slopes;
  return c;
}

ModelFit fit_logistic(const Matrix& panel, std::span<const int> labels,
                      const FitOptions& options) {
  const Eigen::Index n = panel.rows();
  if (static_cast<std::size_t>(n) != labels.size())
    throw PreconditionError("fit_logistic: label count does not match panel rows");
  int cases = 0;
  for (int d : labels) {
    if (d != 0 && d != 1) throw PreconditionError("fit_logistic: labels must be 0/1");
    cases += d;
  }
  if (cases == 0 || cases == n) throw PreconditionError("fit_logistic: need cases and controls");

  const Matrix x = design_with_intercept(panel);
  const Eigen::Index k = x.cols();
  {
    Eigen::ColPivHouseholderQR<Matrix> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) throw SingularDesignError("fit_logistic: design matrix is rank deficient");
  }
  const Vector y = labels_as_vector(labels);

  Vector beta = Vector::Zero(k);
  if (options.start) {
    if (options.start->size() != k) throw PreconditionError("fit_logistic: bad start length");
    beta = *options.start;
  }

  ModelFit fit;
  Vector eta = x * beta;
  double ll = log_likelihood(eta, y);
  fit.loglik_trace.push_back(ll);

  Vector p(n);
  Matrix info(k, k);
  for (int iter = 0;; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) p[i] = sigmoid(eta[i]);
    const Vector score = x.transpose() * (y - p);
    const double score_norm = score.cwiseAbs().maxCoeff();
    const Vector w = p.array() * (1.0 - p.array());
    info.noalias() = x.transpose() * w.asDiagonal() * x;
    fit.iterations = iter;
    fit.score_max_norm = score_norm;
    if (score_norm <= options.tol) {
      fit.converged = true;
      break;
    }
    if (eta.cwiseAbs().maxCoeff() > options.separation_eta)
      throw SeparationError("fit_logistic: linear predictor diverging (separated data)");
    if (iter >= options.max_iter) break;

    Eigen::LLT<Matrix> llt(info);
    if (llt.info() != Eigen::Success)
      throw SingularDesignError("fit_logistic: information matrix is singular");
    const Vector step = llt.solve(score);

    double scale = 1.0;
    Vector trial = beta + step;
    Vector trial_eta = x * trial;
    double trial_ll = log_likelihood(trial_eta, y);
    // Near the optimum the gain is below roundoff; allow that much slack.
    const double slack = 1e-13 * (1.0 + std::abs(ll));
    for (int halving = 0; halving < 40 && !(trial_ll >= ll - slack); ++halving) {
      scale *= 0.5;
      trial = beta + scale * step;
      trial_eta = x * trial;
      trial_ll = log_likelihood(trial_eta, y);
    }
    if (!(trial_ll >= ll - slack)) {
      // No ascent possible at machine precision; accept the current point.
      fit.converged = score_norm <= 1e3 * options.tol;
      break;
    }
    beta = std::move(trial);
    eta = std::move(trial_eta);
    ll = trial_ll;
    fit.loglik_trace.push_back(ll);
  }
  if (!fit.converged) {
    if (eta.cwiseAbs().maxCoeff() > options.separation_eta)
      throw SeparationError("fit_logistic: linear predictor diverging (separated data)");
    throw NumericalError("fit_logistic: no convergence within iteration cap");
  }

  Eigen::LLT<Matrix> llt(info);
  if (llt.info() != Eigen::Success)
    throw SingularDesignError("fit_logistic: information matrix is singular");
  fit.inv_information = llt.solve(Matrix::Identity(k, k));
  fit.inv_information = 0.5 * (fit.inv_information + fit.inv_information.transpose()).eval();
  fit.intercept = beta[0];
  fit.slopes = beta.tail(k - 1);
  fit.fitted_probs = p;
  fit.log_likelihood = ll;
  return fit;
}

Matrix influence_core(const ModelFit& fit, const Matrix& panel, std::span<const int> labels) {
  const Eigen::Index d = fit.slopes.size();
  if (panel.cols() != d) throw PreconditionError("influence_core: dimension mismatch");
  if (static_cast<std::size_t>(panel.rows()) != labels.size())
    throw PreconditionError("influence_core: label count mismatch");
  const Eigen::Index n = panel.rows();
  Matrix residual_design(n, d + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double eta = fit.intercept + panel.row(i).dot(fit.slopes);
    const double r = labels[static_cast<std::size_t>(i)] - sigmoid(eta);
    residual_design(i, 0) = r;
    residual_design.row(i).tail(d) = r * panel.row(i);
  }
  // rows of (I^-1 x~_i r_i)' = r_i x~_i' I^-1, keep slope columns
  const Matrix full = residual_design * fit.inv_information;
  return full.rightCols(d);
}

}  // namespace seqroc
