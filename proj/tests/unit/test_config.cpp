#include "doctest.h"
#include "seqroc/config.hpp"
#include "seqroc/errors.hpp"

#include <fstream>

using namespace seqroc;

TEST_CASE("defaults") {
  const ExperimentSpec s = parse_experiment_json("{}");
  CHECK(s.experiment_kind == ExperimentKind::oc_table);
  CHECK(s.scenario.label == "misspecified");
  CHECK(s.scenario.n_cases == 200);
  CHECK(s.test.new_marker_columns == std::vector<int>{1});
  CHECK(s.test.boundaries.spending == Spending::obf);
}

TEST_CASE("full document") {
  const ExperimentSpec s = parse_experiment_json(R"({
    "kind": "rotation_compare", "seed": 99, "replicates": 300, "workers": 2,
    "scenario": {"preset": "correct", "mu_case": [1.0, 1.5], "n_cases": 500, "n_controls": 500,
                 "mu_alt_components": [1.1, 1.5]},
    "test": {"t": 0.2, "delta0": 0.165, "lambda": 0.5, "spending": "pocock", "stopping": "futility",
             "resolve_single_sided": true},
    "designs": [{"spending": "obf", "stopping": "both"}],
    "rotation": {"V": 10, "kappas": [2, 3], "gammas": [0, 0.5], "oc_replicates": 1000}
  })");
  CHECK(s.experiment_kind == ExperimentKind::rotation_compare);
  CHECK(s.scenario.seed == 99);
  CHECK(s.scenario.label == "correct");
  CHECK(s.scenario.mu_case[1] == 1.5);
  CHECK(s.test.t == 0.2);
  CHECK(s.test.boundaries.stopping == Stopping::futility_only);
  CHECK(s.test.boundaries.resolved_single_sided);
  CHECK(s.designs.size() == 1);
  CHECK(s.rotation.kappas == std::vector<int>{2, 3});
  CHECK(s.parallel_workers == 2);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(parse_experiment_json("{\"bogus\": 1}"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_json("{\"test\": {\"alpah\": 0.05}}"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_json("{not json"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_json("{\"replicates\": \"many\"}"), ConfigError);
  CHECK_THROWS_AS(parse_experiment_json("{\"scenario\": {\"preset\": \"weird\"}}"), ConfigError);
  CHECK_THROWS_AS(load_experiment(std::string(SEQROC_TEST_TMP) + "/nope.json"), IoError);
}

TEST_CASE("load from file") {
  const std::string path = std::string(SEQROC_TEST_TMP) + "/cfg.json";
  {
    std::ofstream out(path);
    out << R"({"kind": "oc_table", "replicates": 150})";
  }
  CHECK(load_experiment(path).replicates == 150);
}
