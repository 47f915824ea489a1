#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqroc/rotation.hpp"

namespace seqroc {

enum class ExperimentKind { oc_table, rotation_compare, bootstrap };

std::string to_string(ExperimentKind k);
ExperimentKind parse_experiment_kind(const std::string& name);

struct RotationSettings {
  int V = 10;
  std::vector<int> kappas{2};
  std::vector<double> gammas{0.0};
  /// Replicates used to estimate (p, p_r, p_r*) for the closed-form arm.
  int oc_replicates = 5000;
  /// Keep established-marker values fixed within a run and redraw only the candidate.
  bool fix_established = false;
  int tail_min_per_stratum = 10;
};

struct BootstrapSettings {
  std::string csv_path;
  std::string label_column = "label";
  std::vector<std::string> established;
  std::vector<std::string> candidates;
  std::vector<std::string> useful;
  std::vector<std::string> log_columns;
};

struct ExperimentSpec {
  ScenarioConfig scenario;  // scenario.seed is the master seed
  TestConfig test;
  int replicates = 2000;
  int parallel_workers = 0;
  std::string output_path;
  ExperimentKind experiment_kind = ExperimentKind::oc_table;
  /// Boundary designs to evaluate; solved from test.alpha / test.lambda.
  /// Empty means the single design in test.boundaries.
  std::vector<BoundarySet> designs;
  RotationSettings rotation;
  BootstrapSettings bootstrap;

  void validate() const;
  std::vector<BoundarySet> resolved_designs() const;
};

/// Label such as "obf/both" (or "manual").
std::string design_label(const BoundarySet& b);

struct OcRow {
  std::string design;
  std::string scenario;
  std::string mu;
  double delta0 = 0.0;
  int n_cases = 0;
  int n_controls = 0;
  int replicates = 0;
  int evaluable = 0;
  int failures = 0;
  double p_reject1 = 0.0, se_reject1 = 0.0;
  double p_accept1 = 0.0, se_accept1 = 0.0;
  double p_continue = 0.0, se_continue = 0.0;
  double p_reject2 = 0.0, se_reject2 = 0.0;
  double p_reject = 0.0, se_reject = 0.0;
};

/// Fresh panel per replicate; replicate r uses substream (seed, r), so the
/// rows are identical for any worker count.
std::vector<OcRow> run_oc_experiment(const ExperimentSpec& spec);

struct RotationRow {
  double gamma = 0.0;
  int kappa = 2;
  std::string design;  // "obf/both", ..., or "default"
  std::string method;  // "analytic" or "simulated"
  double e_n = 0.0, se_n = 0.0;
  double e_nu = 0.0, se_nu = 0.0;
  double e_nut = 0.0, se_nut = 0.0;
  double p = 0.0, p_r = 0.0, p_r_star = 0.0;
  int replicates = 0;
  double not_evaluable = 0.0;  // mean per run (simulated rows)
};

/// Closed-form and simulated operating characteristics of group rotation for
/// every (gamma, kappa, design), plus the non-sequential default arm.
std::vector<RotationRow> run_rotation_experiment(const ExperimentSpec& spec,
                                                 bool analytic = true, bool simulated = true);

struct BootstrapRow {
  double lambda = 0.5;
  std::string design;
  double e_n = 0.0, se_n = 0.0;
  double e_nu = 0.0, se_nu = 0.0;
  double e_nut = 0.0, se_nut = 0.0;
  int replicates = 0;
  int skipped = 0;
  /// Per-replicate values, in replicate order (skipped replicates omitted).
  std::vector<double> n_star, n_u_star, n_u_t_star;
};

/// Stratified bootstrap of a real panel. The partition into groups is drawn
/// once per replicate; candidates are sampled with replacement.
std::vector<BootstrapRow> run_bootstrap(const CaseControlData& panel, const ExperimentSpec& spec);

/// Mean and standard error of a sample.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(const std::vector<double>& xs);

// CSV emission: header plus rows, 6 significant digits, caller's row order.
void emit_csv(const std::vector<OcRow>& rows, const std::string& path);
void emit_csv(const std::vector<RotationRow>& rows, const std::string& path);
void emit_csv(const std::vector<BootstrapRow>& rows, const std::string& path);
std::string to_csv(const std::vector<OcRow>& rows);
std::string to_csv(const std::vector<RotationRow>& rows);
std::string to_csv(const std::vector<BootstrapRow>& rows);

/// Long format (gamma, method, metric, value) for plotting.
std::string to_plot_csv(const std::vector<RotationRow>& rows);

}  // namespace seqroc
