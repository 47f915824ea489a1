#include "seqroc/harness.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "seqroc/csv.hpp"
#include "seqroc/errors.hpp"
#include "seqroc/kernels.hpp"

namespace seqroc {

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::oc_table:
      return "oc_table";
    case ExperimentKind::rotation_compare:
      return "rotation_compare";
    case ExperimentKind::bootstrap:
      return "bootstrap";
  }
  return "oc_table";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
  if (name == "oc_table") return ExperimentKind::oc_table;
  if (name == "rotation_compare") return ExperimentKind::rotation_compare;
  if (name == "bootstrap") return ExperimentKind::bootstrap;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

void ExperimentSpec::validate() const {
  if (replicates < 100) throw ConfigError("experiment: need >= 100 replicates for SE reporting");
  if (!output_path.empty() && output_path != "-") {
    const auto dir = std::filesystem::path(output_path).parent_path();
    if (!dir.empty() && !std::filesystem::is_directory(dir))
      throw ConfigError("experiment: output directory '" + dir.string() + "' does not exist");
  }
  if (experiment_kind != ExperimentKind::bootstrap) scenario.validate();
  if (experiment_kind != ExperimentKind::bootstrap) test.validate(scenario.dims());
  if (rotation.V < 1) throw ConfigError("experiment: V must be >= 1");
  for (int k : rotation.kappas)
    if (k < 2) throw ConfigError("experiment: kappa must be >= 2");
  for (double g : rotation.gammas)
    if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("experiment: gamma outside [0,1]");
}

std::vector<BoundarySet> ExperimentSpec::resolved_designs() const {
  return designs.empty() ? std::vector<BoundarySet>{test.boundaries} : designs;
}

std::string design_label(const BoundarySet& b) {
  if (b.custom) return "manual";
  return to_string(b.spending) + "/" + to_string(b.stopping);
}

namespace {

// Designs re-solved at information fraction `lambda` (manual designs kept).
std::vector<BoundarySet> designs_at(const ExperimentSpec& spec, double lambda) {
  std::vector<BoundarySet> out;
  for (const BoundarySet& b : spec.resolved_designs()) {
    if (b.custom || std::abs(b.info_frac - lambda) < 1e-12) {
      out.push_back(b);
    } else {
      SolveOptions opt;
      opt.resolve_single_sided = b.resolved_single_sided;
      out.push_back(solve_boundaries(b.alpha, lambda, b.spending, b.stopping, opt));
    }
  }
  return out;
}

double binom_se(double p, int n) { return n > 0 ? std::sqrt(p * (1.0 - p) / n) : 0.0; }

std::string join_mu(const Vector& mu) {
  std::string s;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (i) s += ";";
    s += csv::format_sig(mu[i]);
  }
  return s;
}

}  // namespace

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  return out;
}

std::vector<OcRow> run_oc_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<BoundarySet> designs = designs_at(spec, spec.test.lambda);
  const TallyResult tr = tally_designs(spec.scenario, spec.test, designs, spec.replicates,
                                       spec.scenario.seed, spec.parallel_workers);
  std::vector<OcRow> rows;
  for (std::size_t d = 0; d < designs.size(); ++d) {
    const DesignTally& t = tr.designs[d];
    OcRow r;
    r.design = design_label(designs[d]);
    r.scenario = spec.scenario.label;
    r.mu = join_mu(spec.scenario.mu_case);
    r.delta0 = spec.test.delta0;
    r.n_cases = spec.scenario.n_cases;
    r.n_controls = spec.scenario.n_controls;
    r.replicates = spec.replicates;
    r.evaluable = t.evaluable();
    r.failures = t.failed;
    const int n = r.evaluable;
    auto frac = [n](int c) { return n > 0 ? static_cast<double>(c) / n : 0.0; };
    r.p_reject1 = frac(t.reject1);
    r.p_accept1 = frac(t.accept1);
    r.p_continue = frac(t.continued);
    r.p_reject2 = frac(t.reject2);
    r.p_reject = frac(t.reject1 + t.reject2);
    r.se_reject1 = binom_se(r.p_reject1, n);
    r.se_accept1 = binom_se(r.p_accept1, n);
    r.se_continue = binom_se(r.p_continue, n);
    r.se_reject2 = binom_se(r.p_reject2, n);
    r.se_reject = binom_se(r.p_reject, n);
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

struct LawSummary {
  std::vector<double> p_stop, p_reject;
  double p_fixed = 0.0;
  int n = 0, n_fixed = 0;
};

LawSummary summarize_law(const ScenarioConfig& scenario, const TestConfig& test,
                         const std::vector<BoundarySet>& designs, int replicates,
                         std::uint64_t seed, int workers) {
  const TallyResult tr =
      tally_designs(scenario, test, designs, replicates, seed, workers, /*with_fixed=*/true);
  LawSummary s;
  for (const DesignTally& t : tr.designs) {
    const int n = std::max(1, t.evaluable());
    s.p_stop.push_back(static_cast<double>(t.reject1 + t.accept1) / n);
    s.p_reject.push_back(static_cast<double>(t.reject1 + t.reject2) / n);
    s.n = std::max(s.n, t.evaluable());
  }
  s.n_fixed = tr.fixed_evaluable;
  s.p_fixed = tr.fixed_evaluable > 0 ? static_cast<double>(tr.fixed_reject) / tr.fixed_evaluable : 0.0;
  return s;
}

ScenarioConfig law(const ScenarioConfig& sc, bool useful) {
  ScenarioConfig out = sc;
  out.mixture_gamma.reset();
  out.mu_case[out.dims() - 1] = sc.mu_alt_components[useful ? 1 : 0];
  return out;
}

RotationRow analytic_row(double gamma, int kappa, const std::string& design, int V, double p,
                         double se_p, double p_r, double se_p_r, double p_r_star,
                         double se_p_r_star, int replicates) {
  RotationRow r;
  r.gamma = gamma;
  r.kappa = kappa;
  r.design = design;
  r.method = "analytic";
  r.p = p;
  r.p_r = p_r;
  r.p_r_star = p_r_star;
  r.replicates = replicates;
  r.e_n = expected_evaluated(p, V, kappa);
  const double h = 1e-5;
  const double dedp = (expected_evaluated(std::min(1.0, p + h), V, kappa) -
                       expected_evaluated(std::max(0.0, p - h), V, kappa)) /
                      (std::min(1.0, p + h) - std::max(0.0, p - h));
  r.se_n = std::abs(dedp) * se_p;
  r.e_nu = expected_rejected(r.e_n, p_r);
  r.se_nu = std::hypot(p_r * r.se_n, r.e_n * se_p_r);
  r.e_nut = expected_true_validated(r.e_n, p_r_star, gamma);
  r.se_nut = (1.0 - gamma) * std::hypot(p_r_star * r.se_n, r.e_n * se_p_r_star);
  return r;
}

RotationRow simulated_row(double gamma, int kappa, const std::string& design,
                          const std::vector<RotationOutcome>& runs) {
  std::vector<double> n, nu, nut;
  double failures = 0.0;
  for (const auto& o : runs) {
    n.push_back(o.n_star);
    nu.push_back(o.n_u_star);
    nut.push_back(o.n_u_t_star);
    failures += o.not_evaluable;
  }
  RotationRow r;
  r.gamma = gamma;
  r.kappa = kappa;
  r.design = design;
  r.method = "simulated";
  const MeanSe a = mean_se(n), b = mean_se(nu), c = mean_se(nut);
  r.e_n = a.mean;
  r.se_n = a.se;
  r.e_nu = b.mean;
  r.se_nu = b.se;
  r.e_nut = c.mean;
  r.se_nut = c.se;
  r.replicates = static_cast<int>(runs.size());
  r.not_evaluable = runs.empty() ? 0.0 : failures / static_cast<double>(runs.size());
  return r;
}

}  // namespace

std::vector<RotationRow> run_rotation_experiment(const ExperimentSpec& spec, bool analytic,
                                                 bool simulated) {
  spec.validate();
  const std::uint64_t seed = spec.scenario.seed;
  const int V = spec.rotation.V;
  std::vector<RotationRow> rows;

  for (int kappa : spec.rotation.kappas) {
    TestConfig test = spec.test;
    test.lambda = 1.0 / kappa;
    const std::vector<BoundarySet> designs = designs_at(spec, test.lambda);

    LawSummary null_law, useful_law;
    if (analytic) {
      const int R = spec.rotation.oc_replicates;
      useful_law = summarize_law(law(spec.scenario, true), test, designs, R,
                                 substream_seed(seed, 11, static_cast<std::uint64_t>(kappa)),
                                 spec.parallel_workers);
      const bool need_null = std::any_of(spec.rotation.gammas.begin(), spec.rotation.gammas.end(),
                                         [](double g) { return g > 0.0; });
      if (need_null)
        null_law = summarize_law(law(spec.scenario, false), test, designs, R,
                                 substream_seed(seed, 12, static_cast<std::uint64_t>(kappa)),
                                 spec.parallel_workers);
    }

    CaseControlData templ;
    templ.labels.assign(static_cast<std::size_t>(spec.scenario.n_cases + spec.scenario.n_controls), 0);
    std::fill_n(templ.labels.begin(), spec.scenario.n_cases, 1);

    for (double gamma : spec.rotation.gammas) {
      ScenarioConfig mix = spec.scenario;
      mix.mixture_gamma = gamma;

      if (analytic) {
        const int nu = useful_law.n, nn = null_law.n;
        for (std::size_t d = 0; d < designs.size(); ++d) {
          const double pa = useful_law.p_stop[d], ra = useful_law.p_reject[d];
          double p = pa, pr = ra;
          double vp = (1 - gamma) * (1 - gamma) * pa * (1 - pa) / std::max(1, nu);
          double vr = (1 - gamma) * (1 - gamma) * ra * (1 - ra) / std::max(1, nu);
          if (gamma > 0.0) {
            const double pn = null_law.p_stop[d], rn = null_law.p_reject[d];
            p = gamma * pn + (1 - gamma) * pa;
            pr = gamma * rn + (1 - gamma) * ra;
            vp += gamma * gamma * pn * (1 - pn) / std::max(1, nn);
            vr += gamma * gamma * rn * (1 - rn) / std::max(1, nn);
          }
          rows.push_back(analytic_row(gamma, kappa, design_label(designs[d]), V, p, std::sqrt(vp),
                                      pr, std::sqrt(vr), ra, binom_se(ra, nu),
                                      spec.rotation.oc_replicates));
        }
        double pf = useful_law.p_fixed;
        double vf = (1 - gamma) * (1 - gamma) * pf * (1 - pf) / std::max(1, useful_law.n_fixed);
        if (gamma > 0.0) {
          const double pn = null_law.p_fixed;
          pf = gamma * pn + (1 - gamma) * useful_law.p_fixed;
          vf += gamma * gamma * pn * (1 - pn) / std::max(1, null_law.n_fixed);
        }
        RotationRow r;
        r.gamma = gamma;
        r.kappa = kappa;
        r.design = "default";
        r.method = "analytic";
        r.e_n = V;
        r.p_r = pf;
        r.p_r_star = useful_law.p_fixed;
        r.e_nu = V * pf;
        r.se_nu = V * std::sqrt(vf);
        r.e_nut = V * useful_law.p_fixed * (1.0 - gamma);
        r.se_nut = V * (1.0 - gamma) * binom_se(useful_law.p_fixed, useful_law.n_fixed);
        r.replicates = spec.rotation.oc_replicates;
        rows.push_back(r);
      }

      if (simulated) {
        const auto R = static_cast<std::size_t>(spec.replicates);
        const std::uint64_t gkey = static_cast<std::uint64_t>(std::llround(gamma * 1e6));
        auto run_all = [&](const BoundarySet* design) {
          std::vector<RotationOutcome> runs(R);
          kernels::for_each_index(R, spec.parallel_workers, [&](std::size_t r) {
            const std::uint64_t run_seed = substream_seed(seed, 1000 + gkey * 16 + kappa, r);
            CaseControlData layout_data = templ;
            assign_groups(layout_data, kappa, run_seed);
            const RotationLayout layout = RotationLayout::from_data(layout_data, kappa);
            TestConfig tc = test;
            if (design) tc.boundaries = *design;
            std::optional<CaseControlData> base;
            if (spec.rotation.fix_established) {
              Rng base_rng(substream_seed(run_seed, 1));
              base = generate_mvn_panel(mix, base_rng);
            }
            DataEvaluator eval(
                [&mix, &base](Rng& rng) {
                  DataEvaluator::Candidate c;
                  c.panel = base ? redraw_candidate(*base, mix, rng) : generate_mvn_panel(mix, rng);
                  c.useful = !c.panel.candidate_is_null.value_or(false);
                  return c;
                },
                tc);
            RotationConfig rc;
            rc.V = V;
            rc.kappa = kappa;
            rc.test = tc;
            rc.seed = run_seed;
            rc.tail_min_per_stratum = spec.rotation.tail_min_per_stratum;
            Rng rng(substream_seed(run_seed, 2));
            runs[r] = design ? simulate_rotation(layout, rc, eval, rng)
                             : simulate_default(layout, rc, eval, rng);
            runs[r].ledger_history.clear();
            runs[r].units_remaining.clear();
          });
          return runs;
        };
        for (const BoundarySet& b : designs)
          rows.push_back(simulated_row(gamma, kappa, design_label(b), run_all(&b)));
        rows.push_back(simulated_row(gamma, kappa, "default", run_all(nullptr)));
      }
    }
  }
  return rows;
}

namespace {

int column_index(const CaseControlData& panel, const std::string& name) {
  const auto it = std::find(panel.column_names.begin(), panel.column_names.end(), name);
  if (it == panel.column_names.end()) throw ConfigError("bootstrap: unknown column '" + name + "'");
  return static_cast<int>(it - panel.column_names.begin());
}

CaseControlData stratified_resample(const CaseControlData& panel, Rng& rng) {
  IndexList cases, controls;
  for (int i = 0; i < panel.n(); ++i)
    (panel.labels[static_cast<std::size_t>(i)] == 1 ? cases : controls).push_back(i);
  IndexList ids;
  for (const IndexList* s : {&cases, &controls}) {
    std::uniform_int_distribution<std::size_t> pick(0, s->size() - 1);
    for (std::size_t k = 0; k < s->size(); ++k) ids.push_back((*s)[pick(rng)]);
  }
  return panel.subset(ids);
}

struct BootRun {
  bool ok = false;
  // [kappa][design or default] -> counts
  std::vector<std::vector<std::array<int, 3>>> counts;
};

}  // namespace

std::vector<BootstrapRow> run_bootstrap(const CaseControlData& panel, const ExperimentSpec& spec) {
  const BootstrapSettings& bs = spec.bootstrap;
  if (bs.candidates.empty()) throw ConfigError("bootstrap: no candidate markers designated");
  if (bs.established.empty()) throw ConfigError("bootstrap: no established markers designated");
  spec.validate();
  std::vector<int> est, cand;
  for (const auto& n : bs.established) est.push_back(column_index(panel, n));
  for (const auto& n : bs.candidates) cand.push_back(column_index(panel, n));
  std::vector<bool> useful(cand.size(), false);
  for (const auto& n : bs.useful) {
    const int c = column_index(panel, n);
    const auto it = std::find(cand.begin(), cand.end(), c);
    if (it == cand.end()) throw ConfigError("bootstrap: useful marker '" + n + "' is not a candidate");
    useful[static_cast<std::size_t>(it - cand.begin())] = true;
  }
  if (panel.n_cases() < 2 || panel.n_controls() < 2)
    throw ConfigError("bootstrap: panel needs cases and controls");

  const std::uint64_t seed = spec.scenario.seed;
  const int V = spec.rotation.V;
  const auto& kappas = spec.rotation.kappas;
  std::vector<std::vector<BoundarySet>> designs;
  for (int k : kappas) designs.push_back(designs_at(spec, 1.0 / k));

  std::vector<int> panel_cols = est;
  panel_cols.push_back(-1);
  const auto B = static_cast<std::size_t>(spec.replicates);
  std::vector<BootRun> runs(B);

  kernels::for_each_index(B, spec.parallel_workers, [&](std::size_t b) {
    Rng rng = make_rng(seed, b);
    const CaseControlData sample = stratified_resample(panel, rng);
    // One panel per candidate: established columns plus that candidate.
    std::vector<CaseControlData> per_candidate;
    for (int c : cand) {
      std::vector<int> cols = est;
      cols.push_back(c);
      CaseControlData d;
      d.markers = sample.columns(cols);
      d.labels = sample.labels;
      per_candidate.push_back(std::move(d));
    }
    BootRun& run = runs[b];
    run.counts.assign(kappas.size(), {});
    try {
      for (std::size_t ki = 0; ki < kappas.size(); ++ki) {
        const int kappa = kappas[ki];
        CaseControlData layout_data = sample;
        assign_groups(layout_data, kappa, substream_seed(seed, b, static_cast<std::uint64_t>(kappa)));
        const RotationLayout layout = RotationLayout::from_data(layout_data, kappa);
        TestConfig tc = spec.test;
        tc.lambda = 1.0 / kappa;
        tc.new_marker_columns = {static_cast<int>(est.size())};
        tc.boundaries = designs[ki].front();
        DataEvaluator eval(
            [&](Rng& r) {
              const std::size_t c = std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(r);
              DataEvaluator::Candidate out;
              out.panel = per_candidate[c];
              out.useful = useful[c];
              out.cache_key = static_cast<int>(c);
              return out;
            },
            tc);
        RotationConfig rc;
        rc.V = V;
        rc.kappa = kappa;
        rc.test = tc;
        rc.tail_min_per_stratum = spec.rotation.tail_min_per_stratum;
        for (const BoundarySet& design : designs[ki]) {
          eval.set_boundaries(design);
          Rng r = make_rng(seed, b, 100 + static_cast<std::uint64_t>(kappa));
          const RotationOutcome o = simulate_rotation(layout, rc, eval, r);
          run.counts[ki].push_back({o.n_star, o.n_u_star, o.n_u_t_star});
        }
        Rng r = make_rng(seed, b, 200 + static_cast<std::uint64_t>(kappa));
        const RotationOutcome o = simulate_default(layout, rc, eval, r);
        run.counts[ki].push_back({o.n_star, o.n_u_star, o.n_u_t_star});
      }
      run.ok = true;
    } catch (const PreconditionError&) {
      run.ok = false;  // a stage-1 group without enough cases or controls
    }
  });

  std::vector<BootstrapRow> rows;
  int skipped = 0;
  for (const auto& r : runs) skipped += r.ok ? 0 : 1;
  for (std::size_t ki = 0; ki < kappas.size(); ++ki) {
    const std::size_t arms = designs[ki].size() + 1;
    for (std::size_t a = 0; a < arms; ++a) {
      BootstrapRow row;
      row.lambda = 1.0 / kappas[ki];
      row.design = a < designs[ki].size() ? design_label(designs[ki][a]) : "default";
      for (const auto& r : runs) {
        if (!r.ok) continue;
        row.n_star.push_back(r.counts[ki][a][0]);
        row.n_u_star.push_back(r.counts[ki][a][1]);
        row.n_u_t_star.push_back(r.counts[ki][a][2]);
      }
      const MeanSe x = mean_se(row.n_star), y = mean_se(row.n_u_star), z = mean_se(row.n_u_t_star);
      row.e_n = x.mean;
      row.se_n = x.se;
      row.e_nu = y.mean;
      row.se_nu = y.se;
      row.e_nut = z.mean;
      row.se_nut = z.se;
      row.replicates = static_cast<int>(row.n_star.size());
      row.skipped = skipped;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

namespace {

csv::Table oc_table(const std::vector<OcRow>& rows) {
  using csv::format_sig;
  csv::Table t;
  t.header = {"design",     "scenario",   "mu",         "delta0",     "n_cases",
              "n_controls", "replicates", "evaluable",  "failures",   "p_reject1",
              "se_reject1", "p_accept1",  "se_accept1", "p_continue", "se_continue",
              "p_reject2",  "se_reject2", "p_reject",   "se_reject"};
  for (const auto& r : rows)
    t.rows.push_back({r.design, r.scenario, r.mu, format_sig(r.delta0), std::to_string(r.n_cases),
                      std::to_string(r.n_controls), std::to_string(r.replicates),
                      std::to_string(r.evaluable), std::to_string(r.failures),
                      format_sig(r.p_reject1), format_sig(r.se_reject1), format_sig(r.p_accept1),
                      format_sig(r.se_accept1), format_sig(r.p_continue),
                      format_sig(r.se_continue), format_sig(r.p_reject2), format_sig(r.se_reject2),
                      format_sig(r.p_reject), format_sig(r.se_reject)});
  return t;
}

csv::Table rotation_table(const std::vector<RotationRow>& rows) {
  using csv::format_sig;
  csv::Table t;
  t.header = {"gamma", "kappa", "design", "method", "E_n_star",   "se_n_star",  "E_n_u_star",
              "se_n_u_star", "E_n_u_t_star", "se_n_u_t_star", "p", "p_r", "p_r_star",
              "replicates", "not_evaluable"};
  for (const auto& r : rows)
    t.rows.push_back({format_sig(r.gamma), std::to_string(r.kappa), r.design, r.method,
                      format_sig(r.e_n), format_sig(r.se_n), format_sig(r.e_nu),
                      format_sig(r.se_nu), format_sig(r.e_nut), format_sig(r.se_nut),
                      format_sig(r.p), format_sig(r.p_r), format_sig(r.p_r_star),
                      std::to_string(r.replicates), format_sig(r.not_evaluable)});
  return t;
}

csv::Table bootstrap_table(const std::vector<BootstrapRow>& rows) {
  using csv::format_sig;
  csv::Table t;
  t.header = {"lambda",       "design",        "E_n_star",   "se_n_star", "E_n_u_star",
              "se_n_u_star",  "E_n_u_t_star",  "se_n_u_t_star", "replicates", "skipped"};
  for (const auto& r : rows)
    t.rows.push_back({format_sig(r.lambda), r.design, format_sig(r.e_n), format_sig(r.se_n),
                      format_sig(r.e_nu), format_sig(r.se_nu), format_sig(r.e_nut),
                      format_sig(r.se_nut), std::to_string(r.replicates),
                      std::to_string(r.skipped)});
  return t;
}

std::string table_string(const csv::Table& t) {
  std::ostringstream os;
  csv::write(os, t);
  return os.str();
}

}  // namespace

void emit_csv(const std::vector<OcRow>& rows, const std::string& path) {
  csv::write_file(path, oc_table(rows));
}
void emit_csv(const std::vector<RotationRow>& rows, const std::string& path) {
  csv::write_file(path, rotation_table(rows));
}
void emit_csv(const std::vector<BootstrapRow>& rows, const std::string& path) {
  csv::write_file(path, bootstrap_table(rows));
}
std::string to_csv(const std::vector<OcRow>& rows) { return table_string(oc_table(rows)); }
std::string to_csv(const std::vector<RotationRow>& rows) {
  return table_string(rotation_table(rows));
}
std::string to_csv(const std::vector<BootstrapRow>& rows) {
  return table_string(bootstrap_table(rows));
}

std::string to_plot_csv(const std::vector<RotationRow>& rows) {
  csv::Table t;
  t.header = {"gamma", "method", "metric", "value"};
  for (const auto& r : rows) {
    std::string method = r.design + "/" + r.method;
    if (r.kappa != 2) method += "/kappa" + std::to_string(r.kappa);
    const std::pair<const char*, double> metrics[] = {
        {"E_n_star", r.e_n}, {"E_n_u_star", r.e_nu}, {"E_n_u_t_star", r.e_nut}};
    for (const auto& [name, v] : metrics)
      t.rows.push_back({csv::format_sig(r.gamma), method, name, csv::format_sig(v)});
  }
  return table_string(t);
}

}  // namespace seqroc
