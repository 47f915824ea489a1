// seqroc command-line front end. Every command writes CSV to stdout or --output.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "seqroc/config.hpp"
#include "seqroc/csv.hpp"
#include "seqroc/errors.hpp"
#include "seqroc/harness.hpp"

namespace {

using namespace seqroc;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

// Options shared by the simulation commands; unset values leave the config alone.
struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::optional<int> workers;
  std::string output;
  std::optional<std::string> preset;
  std::vector<double> mu;
  std::optional<int> n_cases, n_controls;
  std::optional<double> t, delta0, lambda, alpha;
  std::vector<std::string> designs;  // "obf/both" ...
  bool resolve = false;
  bool single_panel = false;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config, "JSON experiment file");
  app->add_option("--seed", o.seed, "Master seed");
  app->add_option("--replicates", o.replicates, "Monte Carlo replicates");
  app->add_option("--workers", o.workers, "OpenMP threads (0 = runtime default)");
  app->add_option("--output,-o", o.output, "Output CSV path (default stdout)");
  app->add_option("--scenario", o.preset, "Scenario preset: correct | misspecified");
  app->add_option("--mu", o.mu, "Case means, established first")->delimiter(',');
  app->add_option("--n-cases", o.n_cases);
  app->add_option("--n-controls", o.n_controls);
  app->add_option("--t", o.t, "False-positive fraction");
  app->add_option("--delta0", o.delta0, "Null threshold for the incremental value");
  app->add_option("--lambda", o.lambda, "Stage-1 information fraction");
  app->add_option("--alpha", o.alpha, "One-sided level");
  app->add_option("--design", o.designs, "Design spending/stopping, e.g. pocock/both (repeatable)");
  app->add_flag("--resolve-single-sided", o.resolve,
                "Re-solve one-sided stopping modes instead of truncating");
  app->add_flag("--single-panel", o.single_panel, "Test ROC_f(t) of the full panel alone");
}

ExperimentSpec build_spec(const CommonOptions& o, ExperimentKind kind) {
  ExperimentSpec spec;
  if (!o.config.empty()) {
    spec = load_experiment(o.config);
  } else {
    spec.scenario = misspecified_scenario(1.0, 1.1, 200, 200);
    spec.test.new_marker_columns = {1};
  }
  spec.experiment_kind = kind;
  if (o.preset || !o.mu.empty() || o.n_cases || o.n_controls) {
    const int n1 = o.n_cases.value_or(spec.scenario.n_cases);
    const int n0 = o.n_controls.value_or(spec.scenario.n_controls);
    const Vector keep_mu = spec.scenario.mu_case;
    if (o.preset) {
      const auto seed = spec.scenario.seed;
      const auto gamma = spec.scenario.mixture_gamma;
      const auto alt = spec.scenario.mu_alt_components;
      if (*o.preset == "correct")
        spec.scenario = correct_model_scenario(keep_mu[0], keep_mu[keep_mu.size() - 1], n1, n0);
      else if (*o.preset == "misspecified")
        spec.scenario = misspecified_scenario(keep_mu[0], keep_mu[keep_mu.size() - 1], n1, n0);
      else
        throw ConfigError("unknown scenario preset '" + *o.preset + "'");
      spec.scenario.seed = seed;
      spec.scenario.mixture_gamma = gamma;
      spec.scenario.mu_alt_components = alt;
    }
    spec.scenario.n_cases = n1;
    spec.scenario.n_controls = n0;
    if (!o.mu.empty()) {
      if (static_cast<int>(o.mu.size()) != spec.scenario.dims())
        throw ConfigError("--mu needs one value per marker");
      for (std::size_t i = 0; i < o.mu.size(); ++i)
        spec.scenario.mu_case[static_cast<Eigen::Index>(i)] = o.mu[i];
    }
  }
  if (o.seed) spec.scenario.seed = *o.seed;
  if (o.replicates) spec.replicates = *o.replicates;
  if (o.workers) spec.parallel_workers = *o.workers;
  if (!o.output.empty()) spec.output_path = o.output;
  if (o.t) spec.test.t = *o.t;
  if (o.delta0) spec.test.delta0 = *o.delta0;
  if (o.lambda) spec.test.lambda = *o.lambda;
  if (o.alpha) spec.test.alpha = *o.alpha;
  if (o.single_panel) spec.test.mode = TestMode::single_panel;

  const bool resolve = o.resolve || spec.test.boundaries.resolved_single_sided;
  SolveOptions opt;
  opt.resolve_single_sided = resolve;
  if (!o.designs.empty()) {
    spec.designs.clear();
    for (const auto& d : o.designs) {
      const auto slash = d.find('/');
      if (slash == std::string::npos) throw ConfigError("--design expects spending/stopping");
      spec.designs.push_back(solve_boundaries(spec.test.alpha, spec.test.lambda,
                                              parse_spending(d.substr(0, slash)),
                                              parse_stopping(d.substr(slash + 1)), opt));
    }
  } else if (!spec.designs.empty()) {
    for (auto& b : spec.designs)
      b = solve_boundaries(spec.test.alpha, spec.test.lambda, b.spending, b.stopping,
                           SolveOptions{b.resolved_single_sided || o.resolve});
  }
  spec.test.boundaries = solve_boundaries(spec.test.alpha, spec.test.lambda,
                                          spec.test.boundaries.spending,
                                          spec.test.boundaries.stopping, opt);
  return spec;
}

int run_boundaries(double alpha, double lambda, const std::string& spending,
                   const std::string& stopping, bool resolve) {
  SolveOptions opt;
  opt.resolve_single_sided = resolve;
  const BoundarySet b =
      solve_boundaries(alpha, lambda, parse_spending(spending), parse_stopping(stopping), opt);
  csv::Table t;
  t.header = boundary_csv_header();
  t.rows.push_back(boundary_csv_row(b));
  csv::write(std::cout, t);
  return 0;
}

struct TestOptions {
  std::string csv_path;
  std::string label = "label";
  std::vector<std::string> markers;
  std::vector<std::string> new_markers;
  std::vector<std::string> log_columns;
  std::string ids_path;
  double lambda = 0.5;
  std::uint64_t seed = 1;
  double t = 0.1;
  double delta0 = 0.0;
  double alpha = 0.05;
  std::string spending = "obf";
  std::string stopping = "both";
  bool resolve = false;
  bool single_panel = false;
  std::string output;
};

IndexList read_ids(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open id list '" + path + "'");
  IndexList ids;
  std::string tok;
  while (in >> tok) {
    for (const auto& part : split_list(tok)) {
      try {
        ids.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw ConfigError("id list: '" + part + "' is not an integer");
      }
    }
  }
  return ids;
}

int run_test(const TestOptions& o) {
  CaseControlData data = load_csv(o.csv_path, o.label, o.markers, o.log_columns);
  TestConfig cfg;
  cfg.t = o.t;
  cfg.delta0 = o.delta0;
  cfg.lambda = o.lambda;
  cfg.alpha = o.alpha;
  cfg.mode = o.single_panel ? TestMode::single_panel : TestMode::incremental;
  for (const auto& name : o.new_markers) {
    const auto it = std::find(o.markers.begin(), o.markers.end(), name);
    if (it == o.markers.end()) throw ConfigError("--new marker '" + name + "' not in --markers");
    cfg.new_marker_columns.push_back(static_cast<int>(it - o.markers.begin()));
  }
  if (cfg.new_marker_columns.empty() && !o.single_panel)
    cfg.new_marker_columns = {static_cast<int>(o.markers.size()) - 1};
  SolveOptions opt;
  opt.resolve_single_sided = o.resolve;
  cfg.boundaries =
      solve_boundaries(o.alpha, o.lambda, parse_spending(o.spending), parse_stopping(o.stopping), opt);

  IndexList ids;
  if (!o.ids_path.empty()) {
    ids = read_ids(o.ids_path);
  } else {
    Rng rng = make_rng(o.seed);
    ids = select_stage1(data, o.lambda, rng);
  }
  const TwoStageOutcome out = run_two_stage(data, ids, cfg);
  csv::Table t;
  t.header = stage_csv_header();
  t.header.push_back("evaluable");
  t.header.push_back("diagnostic");
  auto push = [&](const StageResult& r) {
    auto row = stage_csv_row(r);
    row.push_back(out.evaluable ? "1" : "0");
    row.push_back(out.diagnostic);
    t.rows.push_back(std::move(row));
  };
  if (out.first) push(*out.first);
  if (out.second) push(*out.second);
  if (!out.first) {
    std::vector<std::string> row(stage_csv_header().size(), "");
    row[0] = "1";
    row.back() = std::to_string(out.units_consumed);
    row.push_back("0");
    row.push_back(out.diagnostic);
    t.rows.push_back(std::move(row));
  }
  std::ostringstream os;
  csv::write(os, t);
  write_output(os.str(), o.output);
  return 0;
}

struct RotationOptions {
  std::optional<int> V;
  std::vector<int> kappas;
  std::vector<double> gammas;
  std::optional<int> oc_replicates;
  bool fix_established = false;
  bool plot_data = false;
};

void add_rotation(CLI::App* app, RotationOptions& r) {
  app->add_option("--V", r.V, "Specimen units per participant");
  app->add_option("--kappa", r.kappas, "Group counts (comma separated)")->delimiter(',');
  app->add_option("--gamma", r.gammas, "Null fractions (comma separated)")->delimiter(',');
  app->add_option("--oc-replicates", r.oc_replicates, "Replicates for (p, p_r, p_r*)");
  app->add_flag("--fix-established", r.fix_established,
                "Hold established-marker values fixed within a run");
  app->add_flag("--plot-data", r.plot_data, "Emit long-format (gamma, method, metric, value)");
}

void apply_rotation(const RotationOptions& r, ExperimentSpec& spec) {
  if (r.V) spec.rotation.V = *r.V;
  if (!r.kappas.empty()) spec.rotation.kappas = r.kappas;
  if (!r.gammas.empty()) spec.rotation.gammas = r.gammas;
  if (r.oc_replicates) spec.rotation.oc_replicates = *r.oc_replicates;
  if (r.fix_established) spec.rotation.fix_established = true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage sequential testing of incremental ROC(t) with group rotation"};
  app.require_subcommand(1);

  double b_alpha = 0.05, b_lambda = 0.5;
  std::string b_spending = "obf", b_stopping = "both";
  bool b_resolve = false;
  auto* boundaries = app.add_subcommand("boundaries", "Solve two-stage boundaries (one CSV row)");
  boundaries->add_option("--alpha", b_alpha);
  boundaries->add_option("--lambda", b_lambda);
  boundaries->add_option("--spending", b_spending)->check(CLI::IsMember({"obf", "pocock"}));
  boundaries->add_option("--stopping", b_stopping)
      ->check(CLI::IsMember({"both", "futility", "efficacy"}));
  boundaries->add_flag("--resolve-single-sided", b_resolve);

  TestOptions topt;
  auto* test = app.add_subcommand("test", "Two-stage test on a CSV panel");
  test->add_option("--csv", topt.csv_path, "Panel CSV")->required();
  test->add_option("--label", topt.label, "Label column (0/1)");
  test->add_option("--markers", topt.markers, "Marker columns, established first")
      ->delimiter(',')
      ->required();
  test->add_option("--new", topt.new_markers, "New-marker columns (default: last marker)")
      ->delimiter(',');
  test->add_option("--log", topt.log_columns, "Columns to log-transform")->delimiter(',');
  test->add_option("--ids", topt.ids_path, "File of stage-1 participant indices (0-based rows)");
  test->add_option("--lambda", topt.lambda, "Stage-1 fraction when --ids is absent");
  test->add_option("--seed", topt.seed, "Seed for the random stage-1 sample");
  test->add_option("--t", topt.t);
  test->add_option("--delta0", topt.delta0);
  test->add_option("--alpha", topt.alpha);
  test->add_option("--spending", topt.spending)->check(CLI::IsMember({"obf", "pocock"}));
  test->add_option("--stopping", topt.stopping)
      ->check(CLI::IsMember({"both", "futility", "efficacy"}));
  test->add_flag("--resolve-single-sided", topt.resolve);
  test->add_flag("--single-panel", topt.single_panel);
  test->add_option("--output,-o", topt.output);

  CommonOptions oc_opt;
  auto* oc = app.add_subcommand("simulate-oc", "Operating characteristics of two-stage designs");
  add_common(oc, oc_opt);

  CommonOptions rs_opt, ra_opt, bs_opt;
  RotationOptions rs_rot, ra_rot, bs_rot;
  auto* rsim = app.add_subcommand("rotate-sim", "Simulated group-rotation outcomes");
  add_common(rsim, rs_opt);
  add_rotation(rsim, rs_rot);
  auto* rana = app.add_subcommand("rotate-analytic", "Closed-form group-rotation outcomes");
  add_common(rana, ra_opt);
  add_rotation(rana, ra_rot);

  auto* boot = app.add_subcommand("bootstrap", "Stratified bootstrap rotation study of a CSV panel");
  add_common(boot, bs_opt);
  add_rotation(boot, bs_rot);
  std::string bs_csv, bs_label, bs_est, bs_cand, bs_useful, bs_log;
  boot->add_option("--csv", bs_csv, "Panel CSV");
  boot->add_option("--label", bs_label, "Label column");
  boot->add_option("--established", bs_est, "Established marker columns (comma separated)");
  boot->add_option("--candidates", bs_cand, "Candidate marker columns (comma separated)");
  boot->add_option("--useful", bs_useful, "Candidates known to be useful (comma separated)");
  boot->add_option("--log", bs_log, "Columns to log-transform (comma separated)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*boundaries) return run_boundaries(b_alpha, b_lambda, b_spending, b_stopping, b_resolve);
    if (*test) return run_test(topt);
    if (*oc) {
      const ExperimentSpec spec = build_spec(oc_opt, ExperimentKind::oc_table);
      write_output(to_csv(run_oc_experiment(spec)), spec.output_path);
      return 0;
    }
    if (*rsim || *rana) {
      const bool sim = static_cast<bool>(*rsim);
      ExperimentSpec spec =
          build_spec(sim ? rs_opt : ra_opt, ExperimentKind::rotation_compare);
      const RotationOptions& r = sim ? rs_rot : ra_rot;
      apply_rotation(r, spec);
      const auto rows = run_rotation_experiment(spec, !sim, sim);
      write_output(r.plot_data ? to_plot_csv(rows) : to_csv(rows), spec.output_path);
      return 0;
    }
    if (*boot) {
      ExperimentSpec spec = build_spec(bs_opt, ExperimentKind::bootstrap);
      apply_rotation(bs_rot, spec);
      if (!bs_rot.V && bs_opt.config.empty()) spec.rotation.V = 50;
      if (bs_rot.kappas.empty() && bs_opt.config.empty()) spec.rotation.kappas = {2, 3};
      if (bs_opt.config.empty() && !bs_opt.replicates) spec.replicates = 1000;
      auto& b = spec.bootstrap;
      if (!bs_csv.empty()) b.csv_path = bs_csv;
      if (!bs_label.empty()) b.label_column = bs_label;
      if (!bs_est.empty()) b.established = split_list(bs_est);
      if (!bs_cand.empty()) b.candidates = split_list(bs_cand);
      if (!bs_useful.empty()) b.useful = split_list(bs_useful);
      if (!bs_log.empty()) b.log_columns = split_list(bs_log);
      if (b.csv_path.empty()) throw ConfigError("bootstrap: --csv is required");
      std::vector<std::string> cols = b.established;
      cols.insert(cols.end(), b.candidates.begin(), b.candidates.end());
      const CaseControlData panel = load_csv(b.csv_path, b.label_column, cols, b.log_columns);
      write_output(to_csv(run_bootstrap(panel, spec)), spec.output_path);
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "seqroc: " << e.what() << " (row " << e.row() << ")\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "seqroc: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "seqroc: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
