#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seqroc/boundary.hpp"
#include "seqroc/roc.hpp"
#include "seqroc/scenario.hpp"
#include "seqroc/variance.hpp"

namespace seqroc {

enum class TestMode {
  incremental,   // ROC_f - ROC_r of full vs restricted panel
  single_panel,  // ROC_f of the full panel alone
};

enum class Decision { reject, accept, continue_, reject_final, accept_final };

std::string to_string(Decision d);

struct TestConfig {
  double t = 0.1;
  double delta0 = 0.0;
  double lambda = 0.5;
  double alpha = 0.05;
  BoundarySet boundaries;
  /// Columns of the panel that hold the new marker(s); the restricted panel is
  /// everything else.
  std::vector<int> new_marker_columns;
  TestMode mode = TestMode::incremental;

  /// Throws ConfigError. `n_columns` is the panel width.
  void validate(int n_columns) const;
  std::vector<int> restricted_columns(int n_columns) const;
};

/// Test statistic on one analysis sample, before any boundary is applied.
struct StageStatistic {
  double z = 0.0;
  double delta_hat = 0.0;  // ROC_f - ROC_r (or ROC_f in single-panel mode)
  RocEstimate roc_full;
  RocEstimate roc_restricted;
  VarianceEstimate variance;
  int n_cases = 0;
  int n_controls = 0;
};

struct StageResult {
  int stage = 1;
  StageStatistic stat;
  Decision decision = Decision::continue_;
  int units_consumed = 0;
};

/// Fits both models on the rows `ids` and forms Z. Throws NumericalError
/// subclasses on fit or variance failure.
StageStatistic compute_statistic(const CaseControlData& data, const IndexList& ids,
                                 const TestConfig& config);

Decision stage1_decision(double z, const BoundarySet& b);
Decision stage2_decision(double z, const BoundarySet& b);

/// Stage-1 ids must hold >= 10 cases and >= 10 controls, and each stratum's
/// count must be within one of lambda times the stratum size.
void check_stage1_ids(const CaseControlData& data, const IndexList& ids, double lambda);

StageResult stage1(const CaseControlData& data, const IndexList& stage1_ids,
                   const TestConfig& config);
/// Requires stage1_result.decision == continue_ (PreconditionError otherwise).
StageResult stage2(const CaseControlData& data, const TestConfig& config,
                   const StageResult& stage1_result);

struct TwoStageOutcome {
  std::optional<StageResult> first;
  std::optional<StageResult> second;
  bool evaluable = true;
  std::string diagnostic;  // set when not evaluable
  int units_consumed = 0;

  bool rejected() const;
  Decision final_decision() const;
};

/// Never throws NumericalError: failures mark the outcome not evaluable.
TwoStageOutcome run_two_stage(const CaseControlData& data, const IndexList& stage1_ids,
                              const TestConfig& config);

/// Random stratified stage-1 sample of round(lambda * N1) cases and
/// round(lambda * N0) controls, in ascending id order.
IndexList select_stage1(const CaseControlData& data, double lambda, Rng& rng);

/// One-shot test on `ids` at critical value Phi^-1(1 - alpha).
bool fixed_sample_reject(const StageStatistic& stat, double alpha);

/// Per-design tallies of a Monte Carlo run in which every replicate draws a
/// fresh panel and a random stratified stage-1 sample. Statistics are shared
/// across designs within a replicate.
struct DesignTally {
  int reject1 = 0;
  int accept1 = 0;
  int continued = 0;
  int reject2 = 0;
  int failed = 0;
  int evaluable() const { return reject1 + accept1 + continued; }
};

struct TallyResult {
  std::vector<DesignTally> designs;
  /// Fixed-sample test on the full sample at level alpha (only when requested).
  int fixed_reject = 0;
  int fixed_evaluable = 0;
};

TallyResult tally_designs(const ScenarioConfig& scenario, const TestConfig& test,
                          const std::vector<BoundarySet>& designs, int replicates,
                          std::uint64_t seed, int workers = 0, bool with_fixed = false);

std::vector<std::string> stage_csv_header();
std::vector<std::string> stage_csv_row(const StageResult& r);

}  // namespace seqroc
