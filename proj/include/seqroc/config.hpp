#pragma once

#include <string>

#include "seqroc/harness.hpp"

namespace seqroc {

/// Reads an experiment description from a JSON document. Recognised keys:
///
///   kind            "oc_table" | "rotation_compare" | "bootstrap"
///   seed, replicates, workers, output
///   scenario        {preset: "correct"|"misspecified", mu_case, cov_case,
///                    cov_control, n_cases, n_controls, mixture_gamma,
///                    mu_alt_components, label}
///   test            {t, delta0, lambda, alpha, spending, stopping,
///                    resolve_single_sided, new_marker_columns, mode}
///   designs         [{spending, stopping, resolve_single_sided}, ...]
///   rotation        {V, kappas, gammas, oc_replicates, fix_established,
///                    tail_min_per_stratum}
///   bootstrap       {csv, label_column, established, candidates, useful,
///                    log_columns}
///
/// Any key may be omitted; a preset fills the scenario first and explicit
/// fields override it. Unknown keys are rejected.
ExperimentSpec parse_experiment_json(const std::string& text);
ExperimentSpec load_experiment(const std::string& path);

}  // namespace seqroc
