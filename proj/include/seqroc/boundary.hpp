#pragma once

#include <string>
#include <vector>

namespace seqroc {

enum class Spending { obf, pocock };
enum class Stopping { both, futility_only, efficacy_only };

std::string to_string(Spending s);
std::string to_string(Stopping s);
/// Accepts "obf"/"pocock" and "both"/"futility"/"efficacy" (plus the *_only forms).
Spending parse_spending(const std::string& name);
Stopping parse_stopping(const std::string& name);

/// Alpha spent at information fraction t_frac.
/// OBF: 2 * Phi(-z_{alpha/2} / sqrt(t)); Pocock: alpha * log(1 + (e - 1) t).
double spending(double alpha, double t_frac, Spending family);

/// P(Z1 > h, Z2 > k) for a standard bivariate normal with correlation rho.
/// Genz's Gauss-Legendre scheme (absolute error well below 1e-10).
double bvn_upper(double h, double k, double rho);

/// Two-stage one-sided boundaries. Stage-1 rule: reject if Z1 >= b1, accept if
/// Z1 <= a1, continue otherwise. Stage-2 rule: reject iff Z2 >= b2.
struct BoundarySet {
  double a1 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double alpha = 0.05;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double info_frac = 0.5;
  double rho = 0.0;
  Spending spending = Spending::obf;
  Stopping stopping = Stopping::both;
  /// Implied alternative on the standardized (I2 = 1) scale: 2 * b2.
  double delta1 = 0.0;
  bool custom = false;
  /// Solved with SolveOptions::resolve_single_sided.
  bool resolved_single_sided = false;

  /// Hand-specified boundaries (degenerate designs in tests and sensitivity runs).
  static BoundarySet manual(double a1, double b1, double b2, double info_frac = 0.5,
                            double alpha = 0.05);
};

struct SolveOptions {
  /// Re-solve the reduced constraint system instead of truncating the
  /// both-stopping solution for the one-sided stopping modes.
  bool resolve_single_sided = false;
  double tol = 1e-12;
};

BoundarySet solve_boundaries(double alpha, double info_frac, Spending family, Stopping stopping,
                             const SolveOptions& options = {});

/// P(reject H0) under the canonical model with drift theta:
/// Z1 ~ N(theta sqrt(info_frac), 1), Z2 ~ N(theta, 1), corr sqrt(info_frac).
double rejection_probability(const BoundarySet& b, double theta = 0.0);
/// P(stop at stage 1) = P(Z1 >= b1) + P(Z1 <= a1) under drift theta.
double stage1_stop_probability(const BoundarySet& b, double theta = 0.0);

std::vector<std::string> boundary_csv_header();
std::vector<std::string> boundary_csv_row(const BoundarySet& b);

}  // namespace seqroc
