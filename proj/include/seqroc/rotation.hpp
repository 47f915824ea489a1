#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqroc/seqtest.hpp"

namespace seqroc {

struct RotationConfig {
  int V = 10;
  int kappa = 2;
  TestConfig test;
  std::uint64_t seed = 0;
  /// Tail-phase floor: fixed-sample tests need this many cases and controls.
  int tail_min_per_stratum = 10;

  void validate() const;
};

/// Stage-1 verdict as seen by the allocation engine.
enum class StageOneCall { reject, accept, continue_, not_evaluable };

/// Source of candidate markers and their test results. `ids` are participant
/// indices of the rotation layout.
class MarkerEvaluator {
 public:
  virtual ~MarkerEvaluator() = default;
  /// Draw the next candidate marker.
  virtual void next_marker(Rng& rng) = 0;
  virtual StageOneCall stage_one(const IndexList& ids, Rng& rng) = 0;
  /// Reject at stage 2; nullopt when the marker cannot be evaluated.
  virtual std::optional<bool> stage_two(const IndexList& ids, Rng& rng) = 0;
  /// Single-stage test at level alpha; nullopt when not evaluable.
  virtual std::optional<bool> fixed_test(const IndexList& ids, Rng& rng) = 0;
  /// Whether the current candidate is truly useful.
  virtual bool truly_useful() const = 0;
};

/// Data-free evaluator: stage 1 stops w.p. p_stop (rejecting w.p.
/// p_reject_given_stop), stage 2 rejects w.p. p_reject_stage2, and each
/// candidate is useful w.p. 1 - gamma.
class BernoulliEvaluator final : public MarkerEvaluator {
 public:
  BernoulliEvaluator(double p_stop, double p_reject_given_stop = 0.5,
                     double p_reject_stage2 = 0.5, double gamma = 0.0);
  void next_marker(Rng& rng) override;
  StageOneCall stage_one(const IndexList& ids, Rng& rng) override;
  std::optional<bool> stage_two(const IndexList& ids, Rng& rng) override;
  std::optional<bool> fixed_test(const IndexList& ids, Rng& rng) override;
  bool truly_useful() const override { return useful_; }

 private:
  double p_stop_, p_reject_stop_, p_reject2_, gamma_;
  bool useful_ = true;
};

/// Runs the two-stage test on panels produced by a marker source. The source
/// returns a panel whose rows follow the rotation layout plus a usefulness flag.
class DataEvaluator final : public MarkerEvaluator {
 public:
  struct Candidate {
    CaseControlData panel;
    bool useful = true;
    /// Key for caching statistics of repeated candidates (bootstrap); -1 disables.
    int cache_key = -1;
  };
  using Source = std::function<Candidate(Rng&)>;

  DataEvaluator(Source source, TestConfig config);
  void next_marker(Rng& rng) override;
  StageOneCall stage_one(const IndexList& ids, Rng& rng) override;
  std::optional<bool> stage_two(const IndexList& ids, Rng& rng) override;
  std::optional<bool> fixed_test(const IndexList& ids, Rng& rng) override;
  bool truly_useful() const override { return current_.useful; }

  int failures() const { return failures_; }
  /// Switch designs while keeping cached statistics (they do not depend on boundaries).
  void set_boundaries(const BoundarySet& b) { config_.boundaries = b; }

 private:
  std::optional<StageStatistic> statistic(const IndexList& ids);

  Source source_;
  TestConfig config_;
  Candidate current_;
  int failures_ = 0;
  std::map<std::pair<int, IndexList>, std::optional<StageStatistic>> cache_;
};

struct LedgerEntry {
  int marker = 0;
  int group = -1;         // stage-1 group; -1 for tail tests
  int stage_reached = 0;  // 1, 2, 0 for incomplete, -1 for a tail test
  std::string outcome;    // reject / accept / not_evaluable / incomplete
  std::vector<int> units_per_group;  // units consumed from each member of group g
};

struct RotationOutcome {
  int n_star = 0;
  int n_u_star = 0;
  int n_u_t_star = 0;
  int not_evaluable = 0;
  int incomplete = 0;
  int fixed_sample_tests = 0;
  int fixed_sample_rejections = 0;
  long long units_consumed = 0;
  std::vector<int> units_remaining;  // per participant
  std::vector<LedgerEntry> ledger_history;
};

/// Participant groups for rotation: `group_id` of `layout` must be set.
struct RotationLayout {
  std::vector<IndexList> groups;
  std::vector<int> labels;

  static RotationLayout from_data(const CaseControlData& data, int kappa);
  /// Synthetic layout for data-free evaluation.
  static RotationLayout balanced(int cases_per_group, int controls_per_group, int kappa);
  int n() const { return static_cast<int>(labels.size()); }
};

/// Group-rotation allocation. While the fullest group has a unit left, test a
/// candidate with one of the fullest groups (chosen uniformly) as stage 1.
/// A stage-1 stop spends one unit of that group only; a continuation spends
/// one unit of every participant and needs every group to still hold a unit,
/// otherwise the candidate is left incomplete and allocation moves to the tail
/// phase of fixed-sample tests on the participants that still hold units.
RotationOutcome simulate_rotation(const RotationLayout& layout, const RotationConfig& config,
                                  MarkerEvaluator& evaluator, Rng& rng);

/// Non-sequential reference: V fixed-sample tests on everyone.
RotationOutcome simulate_default(const RotationLayout& layout, const RotationConfig& config,
                                 MarkerEvaluator& evaluator, Rng& rng);

/// Expected number of candidates evaluated when every candidate stops at
/// stage 1 with probability p.
double expected_evaluated(double p, int V, int kappa);
double expected_rejected(double e_n_star, double p_r);
double expected_true_validated(double e_n_star, double p_r_star, double gamma);

struct OperatingProbs {
  double p = 0.0;
  double p_r = 0.0;
  double p_r_star = 0.0;
  double gamma = 0.0;
  double se_p = 0.0;
  double se_p_r = 0.0;
  double se_p_r_star = 0.0;
  int replicates = 0;
  int excluded = 0;
};

/// Monte Carlo p, p_r under the gamma mixture (as gamma-weighted averages of
/// the null and useful laws) and p_r* under the useful law. The candidate is
/// the last column of `scenario`; its case mean is mu_alt_components[0] for a
/// null candidate and mu_alt_components[1] for a useful one.
OperatingProbs estimate_operating_probs(const ScenarioConfig& scenario, const TestConfig& test,
                                        int replicates, std::uint64_t seed, double gamma,
                                        int workers = 0);

}  // namespace seqroc
