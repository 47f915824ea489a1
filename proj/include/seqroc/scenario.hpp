#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqroc/rng.hpp"

namespace seqroc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using IndexList = std::vector<int>;

/// Synthetic case-control design: controls ~ MVN(0, cov_control) and
/// cases ~ MVN(mu_case, cov_case). The last column is the candidate marker.
struct ScenarioConfig {
  Vector mu_case;
  Matrix cov_case;
  Matrix cov_control;
  int n_cases = 0;
  int n_controls = 0;
  /// Fraction of null candidates. When set, every generated panel draws the
  /// candidate's case mean from {mu_alt_components[0] w.p. gamma,
  /// mu_alt_components[1] otherwise}.
  std::optional<double> mixture_gamma;
  std::array<double, 2> mu_alt_components{1.1, 1.5};
  std::uint64_t seed = 0;
  std::string label;

  int dims() const { return static_cast<int>(mu_case.size()); }
  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

/// Labeled marker matrix with the per-participant specimen ledger.
struct CaseControlData {
  Matrix markers;                  // N x p
  std::vector<int> labels;         // 1 = case, 0 = control
  std::vector<int> units_remaining;
  std::vector<int> group_id;
  std::vector<std::string> column_names;
  /// Set by mixture generation: whether the candidate was drawn as a null marker.
  std::optional<bool> candidate_is_null;

  int n() const { return static_cast<int>(labels.size()); }
  int n_cases() const;
  int n_controls() const { return n() - n_cases(); }
  int n_markers() const { return static_cast<int>(markers.cols()); }
  IndexList all_indices() const;

  /// Rows `ids` (all columns). Ledger and groups are carried along.
  CaseControlData subset(const IndexList& ids) const;
  /// Columns `cols` of every row.
  Matrix columns(const std::vector<int>& cols) const;
};

/// Paper-style presets: established marker (column 0) plus one candidate.
ScenarioConfig correct_model_scenario(double mu_established, double mu_candidate, int n_cases,
                                      int n_controls);
ScenarioConfig misspecified_scenario(double mu_established, double mu_candidate, int n_cases,
                                     int n_controls);

CaseControlData generate_mvn_panel(const ScenarioConfig& config, std::uint64_t rng_seed);
CaseControlData generate_mvn_panel(const ScenarioConfig& config, Rng& rng);

/// Redraws only the candidate (last) column of `base`, conditional on the
/// established columns within each stratum. Used when established-marker
/// values are held fixed across candidates.
CaseControlData redraw_candidate(const CaseControlData& base, const ScenarioConfig& config,
                                 Rng& rng);

/// Phi(sqrt(mu' cov^-1 mu) + Phi^-1(t)): ROC at false-positive fraction t of the
/// optimal linear score for MVN(mu, cov) cases vs MVN(0, cov) controls.
double closed_form_roc(const Vector& mu, const Matrix& cov, double t);

/// Stratified partition into `kappa` groups; group sizes within each stratum
/// differ by at most one. The shuffle uses its own seed so marker values are
/// untouched.
void assign_groups(CaseControlData& data, int kappa, std::uint64_t seed);
IndexList group_members(const CaseControlData& data, int group);

/// Reads a header-first CSV. `log_columns` (a subset of `marker_columns`) are
/// natural-log transformed; non-positive values are rejected.
CaseControlData load_csv(const std::string& path, const std::string& label_column,
                         const std::vector<std::string>& marker_columns,
                         const std::vector<std::string>& log_columns = {});

/// Writes label + markers with round-trip-exact decimal representation.
void write_csv(const CaseControlData& data, const std::string& path,
               const std::string& label_column = "label");

}  // namespace seqroc
