#include "seqroc/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "seqroc/errors.hpp"
#include "seqroc/kernels.hpp"

namespace seqroc {

void RotationConfig::validate() const {
  if (V < 1) throw ConfigError("rotation: V must be >= 1");
  if (kappa < 2) throw ConfigError("rotation: kappa must be >= 2");
  if (std::abs(test.lambda - 1.0 / kappa) > 1e-9)
    throw ConfigError("rotation: test lambda must equal 1/kappa");
  if (tail_min_per_stratum < 1) throw ConfigError("rotation: tail floor must be >= 1");
}

BernoulliEvaluator::BernoulliEvaluator(double p_stop, double p_reject_given_stop,
                                       double p_reject_stage2, double gamma)
    : p_stop_(p_stop), p_reject_stop_(p_reject_given_stop), p_reject2_(p_reject_stage2),
      gamma_(gamma) {
  for (double q : {p_stop, p_reject_given_stop, p_reject_stage2, gamma})
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("BernoulliEvaluator: probabilities in [0,1]");
}

void BernoulliEvaluator::next_marker(Rng& rng) {
  useful_ = !std::bernoulli_distribution(gamma_)(rng);
}

StageOneCall BernoulliEvaluator::stage_one(const IndexList&, Rng& rng) {
  if (!std::bernoulli_distribution(p_stop_)(rng)) return StageOneCall::continue_;
  return std::bernoulli_distribution(p_reject_stop_)(rng) ? StageOneCall::reject
                                                          : StageOneCall::accept;
}

std::optional<bool> BernoulliEvaluator::stage_two(const IndexList&, Rng& rng) {
  return std::bernoulli_distribution(p_reject2_)(rng);
}

std::optional<bool> BernoulliEvaluator::fixed_test(const IndexList&, Rng& rng) {
  return std::bernoulli_distribution(p_reject2_)(rng);
}

DataEvaluator::DataEvaluator(Source source, TestConfig config)
    : source_(std::move(source)), config_(std::move(config)) {}

void DataEvaluator::next_marker(Rng& rng) { current_ = source_(rng); }

std::optional<StageStatistic> DataEvaluator::statistic(const IndexList& ids) {
  const bool cached = current_.cache_key >= 0;
  std::pair<int, IndexList> key;
  if (cached) {
    key = {current_.cache_key, ids};
    if (auto it = cache_.find(key); it != cache_.end()) {
      if (!it->second) ++failures_;
      return it->second;
    }
  }
  std::optional<StageStatistic> st;
  try {
    st = compute_statistic(current_.panel, ids, config_);
  } catch (const NumericalError&) {
    ++failures_;
  }
  if (cached) cache_.emplace(std::move(key), st);
  return st;
}

StageOneCall DataEvaluator::stage_one(const IndexList& ids, Rng&) {
  check_stage1_ids(current_.panel, ids, config_.lambda);
  const auto st = statistic(ids);
  if (!st) return StageOneCall::not_evaluable;
  switch (stage1_decision(st->z, config_.boundaries)) {
    case Decision::reject:
      return StageOneCall::reject;
    case Decision::accept:
      return StageOneCall::accept;
    default:
      return StageOneCall::continue_;
  }
}

std::optional<bool> DataEvaluator::stage_two(const IndexList& ids, Rng&) {
  const auto st = statistic(ids);
  if (!st) return std::nullopt;
  return stage2_decision(st->z, config_.boundaries) == Decision::reject_final;
}

std::optional<bool> DataEvaluator::fixed_test(const IndexList& ids, Rng&) {
  const auto st = statistic(ids);
  if (!st) return std::nullopt;
  return fixed_sample_reject(*st, config_.alpha);
}

RotationLayout RotationLayout::from_data(const CaseControlData& data, int kappa) {
  if (static_cast<int>(data.group_id.size()) != data.n())
    throw PreconditionError("rotation layout: groups not assigned");
  RotationLayout out;
  out.labels = data.labels;
  out.groups.assign(static_cast<std::size_t>(kappa), {});
  for (int i = 0; i < data.n(); ++i) {
    const int g = data.group_id[static_cast<std::size_t>(i)];
    if (g < 0 || g >= kappa) throw PreconditionError("rotation layout: group id out of range");
    out.groups[static_cast<std::size_t>(g)].push_back(i);
  }
  for (const auto& g : out.groups)
    if (g.empty()) throw ConfigError("rotation layout: empty group");
  return out;
}

RotationLayout RotationLayout::balanced(int cases_per_group, int controls_per_group, int kappa) {
  RotationLayout out;
  out.groups.assign(static_cast<std::size_t>(kappa), {});
  for (int g = 0; g < kappa; ++g) {
    for (int k = 0; k < cases_per_group + controls_per_group; ++k) {
      out.groups[static_cast<std::size_t>(g)].push_back(out.n());
      out.labels.push_back(k < cases_per_group ? 1 : 0);
    }
  }
  return out;
}

namespace {

class Ledger {
 public:
  Ledger(const RotationLayout& layout, int V)
      : layout_(layout), group_units_(layout.groups.size(), V),
        participant_units_(static_cast<std::size_t>(layout.n()), V) {}

  int units(std::size_t g) const { return group_units_[g]; }
  std::size_t groups() const { return group_units_.size(); }
  int max_units() const { return *std::max_element(group_units_.begin(), group_units_.end()); }

  // One unit from every member of group g.
  void spend(std::size_t g, LedgerEntry& entry, long long& total) {
    if (group_units_[g] < 1) throw PreconditionError("rotation: spending from an empty group");
    --group_units_[g];
    for (int i : layout_.groups[g]) --participant_units_[static_cast<std::size_t>(i)];
    entry.units_per_group[g] += 1;
    total += static_cast<long long>(layout_.groups[g].size());
  }

  const std::vector<int>& participant_units() const { return participant_units_; }

 private:
  const RotationLayout& layout_;
  std::vector<int> group_units_;
  std::vector<int> participant_units_;
};

IndexList all_ids(const RotationLayout& layout) {
  IndexList ids(static_cast<std::size_t>(layout.n()));
  for (int i = 0; i < layout.n(); ++i) ids[static_cast<std::size_t>(i)] = i;
  return ids;
}

void tally(RotationOutcome& out, bool rejected, bool useful) {
  ++out.n_star;
  if (rejected) {
    ++out.n_u_star;
    if (useful) ++out.n_u_t_star;
  }
}

}  // namespace

RotationOutcome simulate_rotation(const RotationLayout& layout, const RotationConfig& config,
                                  MarkerEvaluator& evaluator, Rng& rng) {
  if (config.V < 1 || config.kappa < 2) throw ConfigError("rotation: need V >= 1, kappa >= 2");
  if (static_cast<int>(layout.groups.size()) != config.kappa)
    throw PreconditionError("rotation: layout group count differs from kappa");
  Ledger ledger(layout, config.V);
  RotationOutcome out;
  const IndexList everyone = all_ids(layout);
  const std::size_t k = ledger.groups();
  int marker = 0;

  while (ledger.max_units() >= 1) {
    const int top = ledger.max_units();
    std::vector<std::size_t> fullest;
    for (std::size_t g = 0; g < k; ++g)
      if (ledger.units(g) == top) fullest.push_back(g);
    const std::size_t g1 =
        fullest[std::uniform_int_distribution<std::size_t>(0, fullest.size() - 1)(rng)];

    LedgerEntry entry;
    entry.marker = marker++;
    entry.group = static_cast<int>(g1);
    entry.stage_reached = 1;
    entry.units_per_group.assign(k, 0);
    evaluator.next_marker(rng);
    const StageOneCall call = evaluator.stage_one(layout.groups[g1], rng);
    ledger.spend(g1, entry, out.units_consumed);

    if (call == StageOneCall::not_evaluable) {
      ++out.not_evaluable;
      entry.outcome = "not_evaluable";
    } else if (call != StageOneCall::continue_) {
      const bool rej = call == StageOneCall::reject;
      tally(out, rej, evaluator.truly_useful());
      entry.outcome = rej ? "reject" : "accept";
    } else {
      bool complete = true;
      for (std::size_t g = 0; g < k; ++g)
        if (g != g1 && ledger.units(g) < 1) complete = false;
      if (!complete) {
        ++out.incomplete;
        entry.stage_reached = 0;
        entry.outcome = "incomplete";
        out.ledger_history.push_back(std::move(entry));
        break;
      }
      for (std::size_t g = 0; g < k; ++g)
        if (g != g1) ledger.spend(g, entry, out.units_consumed);
      entry.stage_reached = 2;
      const auto rej = evaluator.stage_two(everyone, rng);
      if (!rej) {
        ++out.not_evaluable;
        entry.outcome = "not_evaluable";
      } else {
        tally(out, *rej, evaluator.truly_useful());
        entry.outcome = *rej ? "reject" : "accept";
      }
    }
    out.ledger_history.push_back(std::move(entry));
  }

  // Tail phase: fixed-sample tests on whoever still holds units.
  for (;;) {
    IndexList ids;
    std::vector<std::size_t> used;
    int cases = 0, controls = 0;
    for (std::size_t g = 0; g < k; ++g) {
      if (ledger.units(g) < 1) continue;
      used.push_back(g);
      for (int i : layout.groups[g]) {
        ids.push_back(i);
        (layout.labels[static_cast<std::size_t>(i)] == 1 ? cases : controls) += 1;
      }
    }
    if (cases < config.tail_min_per_stratum || controls < config.tail_min_per_stratum) break;
    std::sort(ids.begin(), ids.end());
    LedgerEntry entry;
    entry.marker = marker++;
    entry.stage_reached = -1;
    entry.units_per_group.assign(k, 0);
    evaluator.next_marker(rng);
    const auto rej = evaluator.fixed_test(ids, rng);
    for (std::size_t g : used) ledger.spend(g, entry, out.units_consumed);
    if (!rej) {
      ++out.not_evaluable;
      entry.outcome = "not_evaluable";
    } else {
      ++out.fixed_sample_tests;
      if (*rej) ++out.fixed_sample_rejections;
      entry.outcome = *rej ? "reject" : "accept";
    }
    out.ledger_history.push_back(std::move(entry));
  }
  out.units_remaining = ledger.participant_units();
  return out;
}

RotationOutcome simulate_default(const RotationLayout& layout, const RotationConfig& config,
                                 MarkerEvaluator& evaluator, Rng& rng) {
  if (config.V < 1) throw ConfigError("rotation: V must be >= 1");
  Ledger ledger(layout, config.V);
  RotationOutcome out;
  const IndexList everyone = all_ids(layout);
  for (int m = 0; m < config.V; ++m) {
    LedgerEntry entry;
    entry.marker = m;
    entry.stage_reached = -1;
    entry.units_per_group.assign(ledger.groups(), 0);
    evaluator.next_marker(rng);
    const auto rej = evaluator.fixed_test(everyone, rng);
    for (std::size_t g = 0; g < ledger.groups(); ++g) ledger.spend(g, entry, out.units_consumed);
    // Every default test consumes its specimens, evaluable or not.
    ++out.n_star;
    if (!rej) {
      ++out.not_evaluable;
      entry.outcome = "not_evaluable";
    } else {
      if (*rej) {
        ++out.n_u_star;
        if (evaluator.truly_useful()) ++out.n_u_t_star;
      }
      entry.outcome = *rej ? "reject" : "accept";
    }
    out.ledger_history.push_back(std::move(entry));
  }
  out.units_remaining = ledger.participant_units();
  return out;
}

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// c * C(n, k) * p^a * (1 - p)^b, evaluated in log space.
double binomial_term(double c, double n, double k, double a, double b, double p) {
  if (c == 0.0 || k > n) return 0.0;
  if ((a > 0.0 && p == 0.0) || (b > 0.0 && p == 1.0)) return 0.0;
  double lg = std::log(c) + log_choose(n, k);
  if (a > 0.0) lg += a * std::log(p);
  if (b > 0.0) lg += b * std::log1p(-p);
  return std::exp(lg);
}

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double expected_evaluated(double p, int V, int kappa) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("expected_evaluated: p must lie in [0,1]");
  if (V < 1 || kappa < 2) throw DomainError("expected_evaluated: need V >= 1, kappa >= 2");
  const double k = kappa;
  CompensatedSum s;
  s.add(V);
  for (int i = 0; i <= V; ++i) {
    const double c = (k - 1.0) * i;
    s.add(binomial_term(c, V + c, k * i, k * i, V - i, p));
  }
  for (int i = 0; i <= V - 1; ++i) {
    for (int j = 0; j <= kappa - 2; ++j) {
      const double c = (k - 1.0) * i + j;
      s.add(binomial_term(c, V + c, k * i + j + 1.0, k * i + j + 1.0, V - i, p));
    }
  }
  return std::max(s.value(), static_cast<double>(V));
}

double expected_rejected(double e_n_star, double p_r) {
  if (!(p_r >= 0.0 && p_r <= 1.0)) throw DomainError("expected_rejected: p_r must lie in [0,1]");
  return e_n_star * p_r;
}

double expected_true_validated(double e_n_star, double p_r_star, double gamma) {
  if (!(p_r_star >= 0.0 && p_r_star <= 1.0) || !(gamma >= 0.0 && gamma <= 1.0))
    throw DomainError("expected_true_validated: probabilities must lie in [0,1]");
  return e_n_star * p_r_star * (1.0 - gamma);
}

namespace {

struct LawProbs {
  double p_stop = 0.0;
  double p_reject = 0.0;
  int used = 0;
  int excluded = 0;
};

LawProbs estimate_law(const ScenarioConfig& scenario, const TestConfig& test, int replicates,
                      std::uint64_t seed, int workers) {
  const TallyResult tr = tally_designs(scenario, test, {test.boundaries}, replicates, seed, workers);
  const DesignTally& t = tr.designs.front();
  LawProbs out;
  out.used = t.evaluable();
  out.excluded = t.failed;
  if (out.used == 0) throw NumericalError("operating probabilities: no evaluable replicate");
  out.p_stop = static_cast<double>(t.reject1 + t.accept1) / out.used;
  out.p_reject = static_cast<double>(t.reject1 + t.reject2) / out.used;
  return out;
}

double binom_var(double p, int n) { return n > 0 ? p * (1.0 - p) / n : 0.0; }

}  // namespace

OperatingProbs estimate_operating_probs(const ScenarioConfig& scenario, const TestConfig& test,
                                        int replicates, std::uint64_t seed, double gamma,
                                        int workers) {
  if (replicates < 100) throw ConfigError("operating probabilities: need >= 100 replicates");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("operating probabilities: gamma in [0,1]");
  ScenarioConfig useful = scenario;
  useful.mixture_gamma.reset();
  useful.mu_case[useful.dims() - 1] = scenario.mu_alt_components[1];
  ScenarioConfig null_law = useful;
  null_law.mu_case[null_law.dims() - 1] = scenario.mu_alt_components[0];

  const LawProbs alt = estimate_law(useful, test, replicates, substream_seed(seed, 1), workers);
  OperatingProbs out;
  out.gamma = gamma;
  out.replicates = replicates;
  out.p_r_star = alt.p_reject;
  out.se_p_r_star = std::sqrt(binom_var(alt.p_reject, alt.used));
  out.excluded = alt.excluded;
  if (gamma > 0.0) {
    const LawProbs nul = estimate_law(null_law, test, replicates, substream_seed(seed, 2), workers);
    out.excluded += nul.excluded;
    out.p = gamma * nul.p_stop + (1.0 - gamma) * alt.p_stop;
    out.p_r = gamma * nul.p_reject + (1.0 - gamma) * alt.p_reject;
    out.se_p = std::sqrt(gamma * gamma * binom_var(nul.p_stop, nul.used) +
                         (1.0 - gamma) * (1.0 - gamma) * binom_var(alt.p_stop, alt.used));
    out.se_p_r = std::sqrt(gamma * gamma * binom_var(nul.p_reject, nul.used) +
                           (1.0 - gamma) * (1.0 - gamma) * binom_var(alt.p_reject, alt.used));
  } else {
    out.p = alt.p_stop;
    out.p_r = alt.p_reject;
    out.se_p = std::sqrt(binom_var(alt.p_stop, alt.used));
    out.se_p_r = out.se_p_r_star;
  }
  return out;
}

}  // namespace seqroc
