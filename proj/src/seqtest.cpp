#include "seqroc/seqtest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seqroc/csv.hpp"
#include "seqroc/errors.hpp"
#include "seqroc/kernels.hpp"
#include "seqroc/normal.hpp"

namespace seqroc {

std::string to_string(Decision d) {
  switch (d) {
    case Decision::reject:
      return "reject";
    case Decision::accept:
      return "accept";
    case Decision::continue_:
      return "continue";
    case Decision::reject_final:
      return "reject_final";
    case Decision::accept_final:
      return "accept_final";
  }
  return "continue";
}

void TestConfig::validate(int n_columns) const {
  if (!(t > 0.0 && t < 1.0)) throw ConfigError("test: t must lie in (0,1)");
  if (!(delta0 >= 0.0) && mode == TestMode::incremental)
    throw ConfigError("test: delta0 must be non-negative");
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("test: lambda must lie in (0,1)");
  if (!(alpha > 0.0 && alpha < 0.5)) throw ConfigError("test: alpha must lie in (0, 0.5)");
  if (mode == TestMode::single_panel) return;
  if (new_marker_columns.empty()) throw ConfigError("test: no new-marker columns given");
  for (int c : new_marker_columns)
    if (c < 0 || c >= n_columns) throw ConfigError("test: new-marker column out of range");
  if (restricted_columns(n_columns).empty())
    throw ConfigError("test: restricted panel would have no columns");
}

std::vector<int> TestConfig::restricted_columns(int n_columns) const {
  std::vector<int> out;
  for (int c = 0; c < n_columns; ++c)
    if (std::find(new_marker_columns.begin(), new_marker_columns.end(), c) ==
        new_marker_columns.end())
      out.push_back(c);
  return out;
}

namespace {

Matrix rows_cols(const Matrix& m, const IndexList& rows, const std::vector<int>& cols) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  return out;
}

}  // namespace

StageStatistic compute_statistic(const CaseControlData& data, const IndexList& ids,
                                 const TestConfig& config) {
  const int p = data.n_markers();
  config.validate(p);
  std::vector<int> labels;
  labels.reserve(ids.size());
  StageStatistic st;
  for (int i : ids) {
    if (i < 0 || i >= data.n()) throw PreconditionError("test: participant id out of range");
    labels.push_back(data.labels[static_cast<std::size_t>(i)]);
    (labels.back() == 1 ? st.n_cases : st.n_controls) += 1;
  }

  std::vector<int> all_cols(static_cast<std::size_t>(p));
  std::iota(all_cols.begin(), all_cols.end(), 0);
  const Matrix full = rows_cols(data.markers, ids, all_cols);
  const ModelFit fit_full = fit_logistic(full, labels);
  st.roc_full = empirical_roc(combination_scores(fit_full, full), labels, config.t);

  double sigma = 0.0;
  if (config.mode == TestMode::single_panel) {
    st.variance = sigma_single_panel(fit_full, full, labels, config.t);
    st.delta_hat = st.roc_full.value;
    sigma = st.variance.sigma_f;
  } else {
    const Matrix restricted = rows_cols(data.markers, ids, config.restricted_columns(p));
    const ModelFit fit_r = fit_logistic(restricted, labels);
    st.roc_restricted = empirical_roc(combination_scores(fit_r, restricted), labels, config.t);
    st.variance = sigma_components(fit_full, fit_r, full, restricted, labels, config.t);
    st.delta_hat = st.roc_full.value - st.roc_restricted.value;
    sigma = st.variance.sigma_delta;
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw DegenerateStatisticError("test: variance estimate is not positive");
  st.z = (st.delta_hat - config.delta0) / std::sqrt(sigma);
  return st;
}

Decision stage1_decision(double z, const BoundarySet& b) {
  if (z >= b.b1) return Decision::reject;
  if (z <= b.a1) return Decision::accept;
  return Decision::continue_;
}

Decision stage2_decision(double z, const BoundarySet& b) {
  return z >= b.b2 ? Decision::reject_final : Decision::accept_final;
}

void check_stage1_ids(const CaseControlData& data, const IndexList& ids, double lambda) {
  int cases = 0, controls = 0;
  for (int i : ids) {
    if (i < 0 || i >= data.n()) throw PreconditionError("stage 1: participant id out of range");
    (data.labels[static_cast<std::size_t>(i)] == 1 ? cases : controls) += 1;
  }
  if (cases < 10 || controls < 10)
    throw PreconditionError("stage 1: need at least 10 cases and 10 controls");
  const double want_cases = lambda * data.n_cases();
  const double want_controls = lambda * data.n_controls();
  if (std::abs(cases - want_cases) > 1.0 || std::abs(controls - want_controls) > 1.0)
    throw ConfigError("stage 1: stratum fractions must both equal lambda");
}

StageResult stage1(const CaseControlData& data, const IndexList& stage1_ids,
                   const TestConfig& config) {
  check_stage1_ids(data, stage1_ids, config.lambda);
  StageResult r;
  r.stage = 1;
  r.stat = compute_statistic(data, stage1_ids, config);
  r.decision = stage1_decision(r.stat.z, config.boundaries);
  r.units_consumed = static_cast<int>(stage1_ids.size());
  return r;
}

StageResult stage2(const CaseControlData& data, const TestConfig& config,
                   const StageResult& stage1_result) {
  if (stage1_result.stage != 1 || stage1_result.decision != Decision::continue_)
    throw PreconditionError("stage 2: stage 1 did not end in 'continue'");
  StageResult r;
  r.stage = 2;
  r.stat = compute_statistic(data, data.all_indices(), config);
  r.decision = stage2_decision(r.stat.z, config.boundaries);
  r.units_consumed = data.n() - stage1_result.units_consumed;
  return r;
}

bool TwoStageOutcome::rejected() const {
  const Decision d = final_decision();
  return evaluable && (d == Decision::reject || d == Decision::reject_final);
}

Decision TwoStageOutcome::final_decision() const {
  if (second) return second->decision;
  if (first) return first->decision;
  return Decision::accept;
}

TwoStageOutcome run_two_stage(const CaseControlData& data, const IndexList& stage1_ids,
                              const TestConfig& config) {
  TwoStageOutcome out;
  try {
    out.first = stage1(data, stage1_ids, config);
  } catch (const NumericalError& e) {
    out.evaluable = false;
    out.diagnostic = std::string("stage 1: ") + e.what();
    out.units_consumed = static_cast<int>(stage1_ids.size());
    return out;
  }
  out.units_consumed = out.first->units_consumed;
  if (out.first->decision != Decision::continue_) return out;
  out.units_consumed = data.n();
  try {
    out.second = stage2(data, config, *out.first);
  } catch (const NumericalError& e) {
    out.evaluable = false;
    out.diagnostic = std::string("stage 2: ") + e.what();
  }
  return out;
}

IndexList select_stage1(const CaseControlData& data, double lambda, Rng& rng) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("select_stage1: lambda in (0,1)");
  IndexList cases, controls;
  for (int i = 0; i < data.n(); ++i)
    (data.labels[static_cast<std::size_t>(i)] == 1 ? cases : controls).push_back(i);
  std::shuffle(cases.begin(), cases.end(), rng);
  std::shuffle(controls.begin(), controls.end(), rng);
  const auto keep1 = static_cast<std::size_t>(std::lround(lambda * static_cast<double>(cases.size())));
  const auto keep0 =
      static_cast<std::size_t>(std::lround(lambda * static_cast<double>(controls.size())));
  IndexList ids(cases.begin(), cases.begin() + static_cast<std::ptrdiff_t>(keep1));
  ids.insert(ids.end(), controls.begin(), controls.begin() + static_cast<std::ptrdiff_t>(keep0));
  std::sort(ids.begin(), ids.end());
  return ids;
}

bool fixed_sample_reject(const StageStatistic& stat, double alpha) {
  return stat.z >= norm_isf(alpha);
}

TallyResult tally_designs(const ScenarioConfig& scenario, const TestConfig& test,
                          const std::vector<BoundarySet>& designs, int replicates,
                          std::uint64_t seed, int workers, bool with_fixed) {
  if (replicates < 1) throw ConfigError("tally: need at least one replicate");
  const std::size_t nd = designs.size();
  const auto nr = static_cast<std::size_t>(replicates);
  // Per (replicate, design): 0 failed, 1 accept, 2 reject, 3 stage-2 accept, 4 stage-2 reject.
  std::vector<signed char> code(nr * nd, 0);
  // Fixed test: -1 failed, 0 accept, 1 reject.
  std::vector<signed char> fixed(nr, -1);

  kernels::for_each_index(nr, workers, [&](std::size_t r) {
    Rng rng = make_rng(seed, r);
    const CaseControlData data = generate_mvn_panel(scenario, rng);
    const IndexList ids = select_stage1(data, test.lambda, rng);
    check_stage1_ids(data, ids, test.lambda);
    std::optional<StageStatistic> s1, s2;
    try {
      s1 = compute_statistic(data, ids, test);
    } catch (const NumericalError&) {
    }
    bool need_full = with_fixed;
    if (s1)
      for (const auto& b : designs)
        if (stage1_decision(s1->z, b) == Decision::continue_) need_full = true;
    if (need_full) {
      try {
        s2 = compute_statistic(data, data.all_indices(), test);
      } catch (const NumericalError&) {
      }
    }
    if (with_fixed && s2) fixed[r] = fixed_sample_reject(*s2, test.alpha) ? 1 : 0;
    if (!s1) return;
    for (std::size_t d = 0; d < nd; ++d) {
      const Decision d1 = stage1_decision(s1->z, designs[d]);
      signed char c = 0;
      if (d1 == Decision::accept) {
        c = 1;
      } else if (d1 == Decision::reject) {
        c = 2;
      } else if (s2) {
        c = stage2_decision(s2->z, designs[d]) == Decision::reject_final ? 4 : 3;
      }
      code[r * nd + d] = c;
    }
  });

  TallyResult out;
  out.designs.assign(nd, {});
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t d = 0; d < nd; ++d) {
      DesignTally& t = out.designs[d];
      switch (code[r * nd + d]) {
        case 0:
          ++t.failed;
          break;
        case 1:
          ++t.accept1;
          break;
        case 2:
          ++t.reject1;
          break;
        case 3:
          ++t.continued;
          break;
        case 4:
          ++t.continued;
          ++t.reject2;
          break;
      }
    }
    if (fixed[r] >= 0) {
      ++out.fixed_evaluable;
      out.fixed_reject += fixed[r];
    }
  }
  return out;
}

std::vector<std::string> stage_csv_header() {
  return {"stage",     "z",          "delta_hat",   "roc_full",  "roc_restricted",
          "threshold_full", "sigma_f", "sigma_r",   "sigma_fr",  "sigma_delta",
          "n_cases",   "n_controls", "decision",    "units_consumed"};
}

std::vector<std::string> stage_csv_row(const StageResult& r) {
  using csv::format_sig;
  const auto& s = r.stat;
  return {std::to_string(r.stage),
          format_sig(s.z),
          format_sig(s.delta_hat),
          format_sig(s.roc_full.value),
          format_sig(s.roc_restricted.value),
          format_sig(s.roc_full.threshold),
          format_sig(s.variance.sigma_f),
          format_sig(s.variance.sigma_r),
          format_sig(s.variance.sigma_fr),
          format_sig(s.variance.reported_sigma_delta()),
          std::to_string(s.n_cases),
          std::to_string(s.n_controls),
          to_string(r.decision),
          std::to_string(r.units_consumed)};
}

}  // namespace seqroc
