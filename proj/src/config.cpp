#include "seqroc/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "seqroc/errors.hpp"

namespace seqroc {
namespace {

using nlohmann::json;

void only_keys(const json& j, const char* where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(std::string(where) + ": expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(std::string(where) + ": unknown key '" + k + "'");
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

Vector to_vector(const json& j) {
  const auto v = j.get<std::vector<double>>();
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

Matrix to_matrix(const json& j) {
  const auto rows = j.get<std::vector<std::vector<double>>>();
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw ConfigError("config: covariance must be square");
    for (Eigen::Index k = 0; k < n; ++k)
      out(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  }
  return out;
}

ScenarioConfig parse_scenario(const json& j) {
  only_keys(j, "scenario", {"preset", "mu_case", "cov_case", "cov_control", "n_cases",
                            "n_controls", "mixture_gamma", "mu_alt_components", "label"});
  std::string preset = "misspecified";
  read(j, "preset", preset);
  int n1 = 200, n0 = 200;
  read(j, "n_cases", n1);
  read(j, "n_controls", n0);
  ScenarioConfig s;
  if (preset == "correct")
    s = correct_model_scenario(1.0, 1.1, n1, n0);
  else if (preset == "misspecified")
    s = misspecified_scenario(1.0, 1.1, n1, n0);
  else
    throw ConfigError("scenario: unknown preset '" + preset + "'");
  if (j.contains("mu_case")) s.mu_case = to_vector(j.at("mu_case"));
  if (j.contains("cov_case")) s.cov_case = to_matrix(j.at("cov_case"));
  if (j.contains("cov_control")) s.cov_control = to_matrix(j.at("cov_control"));
  if (j.contains("mixture_gamma") && !j.at("mixture_gamma").is_null())
    s.mixture_gamma = j.at("mixture_gamma").get<double>();
  if (j.contains("mu_alt_components")) {
    const auto v = j.at("mu_alt_components").get<std::vector<double>>();
    if (v.size() != 2) throw ConfigError("scenario: mu_alt_components needs two values");
    s.mu_alt_components = {v[0], v[1]};
  }
  read(j, "label", s.label);
  return s;
}

TestConfig parse_test(const json& j, int n_columns) {
  only_keys(j, "test", {"t", "delta0", "lambda", "alpha", "spending", "stopping",
                        "resolve_single_sided", "new_marker_columns", "mode"});
  TestConfig t;
  read(j, "t", t.t);
  read(j, "delta0", t.delta0);
  read(j, "lambda", t.lambda);
  read(j, "alpha", t.alpha);
  std::string spending = "obf", stopping = "both", mode = "incremental";
  bool resolve = false;
  read(j, "spending", spending);
  read(j, "stopping", stopping);
  read(j, "resolve_single_sided", resolve);
  read(j, "mode", mode);
  if (mode == "incremental")
    t.mode = TestMode::incremental;
  else if (mode == "single_panel")
    t.mode = TestMode::single_panel;
  else
    throw ConfigError("test: unknown mode '" + mode + "'");
  t.new_marker_columns = {n_columns - 1};
  read(j, "new_marker_columns", t.new_marker_columns);
  SolveOptions opt;
  opt.resolve_single_sided = resolve;
  t.boundaries =
      solve_boundaries(t.alpha, t.lambda, parse_spending(spending), parse_stopping(stopping), opt);
  return t;
}

}  // namespace

ExperimentSpec parse_experiment_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  try {
    only_keys(j, "config", {"kind", "seed", "replicates", "workers", "output", "scenario", "test",
                            "designs", "rotation", "bootstrap"});
    ExperimentSpec spec;
    std::string kind = "oc_table";
    read(j, "kind", kind);
    spec.experiment_kind = parse_experiment_kind(kind);
    spec.scenario = parse_scenario(j.value("scenario", json::object()));
    read(j, "seed", spec.scenario.seed);
    read(j, "replicates", spec.replicates);
    read(j, "workers", spec.parallel_workers);
    read(j, "output", spec.output_path);

    const json& jb = j.value("bootstrap", json::object());
    only_keys(jb, "bootstrap",
              {"csv", "label_column", "established", "candidates", "useful", "log_columns"});
    read(jb, "csv", spec.bootstrap.csv_path);
    read(jb, "label_column", spec.bootstrap.label_column);
    read(jb, "established", spec.bootstrap.established);
    read(jb, "candidates", spec.bootstrap.candidates);
    read(jb, "useful", spec.bootstrap.useful);
    read(jb, "log_columns", spec.bootstrap.log_columns);

    const int width = spec.experiment_kind == ExperimentKind::bootstrap
                          ? static_cast<int>(spec.bootstrap.established.size()) + 1
                          : spec.scenario.dims();
    spec.test = parse_test(j.value("test", json::object()), width);

    if (j.contains("designs")) {
      for (const json& d : j.at("designs")) {
        only_keys(d, "designs[]", {"spending", "stopping", "resolve_single_sided"});
        SolveOptions opt;
        read(d, "resolve_single_sided", opt.resolve_single_sided);
        spec.designs.push_back(solve_boundaries(
            spec.test.alpha, spec.test.lambda, parse_spending(d.at("spending").get<std::string>()),
            parse_stopping(d.at("stopping").get<std::string>()), opt));
      }
    }

    const json& jr = j.value("rotation", json::object());
    only_keys(jr, "rotation", {"V", "kappas", "gammas", "oc_replicates", "fix_established",
                               "tail_min_per_stratum"});
    read(jr, "V", spec.rotation.V);
    read(jr, "kappas", spec.rotation.kappas);
    read(jr, "gammas", spec.rotation.gammas);
    read(jr, "oc_replicates", spec.rotation.oc_replicates);
    read(jr, "fix_established", spec.rotation.fix_established);
    read(jr, "tail_min_per_stratum", spec.rotation.tail_min_per_stratum);
    return spec;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentSpec load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_json(ss.str());
}

}  // namespace seqroc
