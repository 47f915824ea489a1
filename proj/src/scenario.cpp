#include "seqroc/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "seqroc/csv.hpp"
#include "seqroc/errors.hpp"
#include "seqroc/normal.hpp"

namespace seqroc {
namespace {

Matrix cholesky_or_throw(const Matrix& cov, const char* what) {
  if (cov.rows() != cov.cols()) throw ConfigError(std::string(what) + " is not square");
  if (!cov.isApprox(cov.transpose(), 1e-12))
    throw ConfigError(std::string(what) + " is not symmetric");
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success)
    throw ConfigError(std::string(what) + " is not positive definite");
  return llt.matrixL();
}

Matrix compound_symmetric(int d, double offdiag) {
  Matrix m = Matrix::Constant(d, d, offdiag);
  m.diagonal().setOnes();
  return m;
}

void fill_rows(Matrix& out, int row0, int count, const Vector& mean, const Matrix& chol,
               Rng& rng) {
  std::normal_distribution<double> z01;
  const int d = static_cast<int>(mean.size());
  Vector z(d);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < d; ++j) z[j] = z01(rng);
    out.row(row0 + i) = (mean + chol * z).transpose();
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  const int d = dims();
  if (d < 1) throw ConfigError("scenario: mu_case is empty");
  if (cov_case.rows() != d || cov_control.rows() != d)
    throw ConfigError("scenario: covariance dimension does not match mu_case");
  cholesky_or_throw(cov_case, "cov_case");
  cholesky_or_throw(cov_control, "cov_control");
  if (n_cases < 2 || n_controls < 2) throw ConfigError("scenario: need >= 2 cases and controls");
  if (mixture_gamma && !(*mixture_gamma >= 0.0 && *mixture_gamma <= 1.0))
    throw ConfigError("scenario: mixture_gamma outside [0,1]");
}

int CaseControlData::n_cases() const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), 1));
}

IndexList CaseControlData::all_indices() const {
  IndexList ids(labels.size());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

CaseControlData CaseControlData::subset(const IndexList& ids) const {
  CaseControlData out;
  out.markers.resize(static_cast<Eigen::Index>(ids.size()), markers.cols());
  out.labels.reserve(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const int i = ids[k];
    if (i < 0 || i >= n()) throw PreconditionError("subset: index out of range");
    out.markers.row(static_cast<Eigen::Index>(k)) = markers.row(i);
    out.labels.push_back(labels[i]);
    if (!units_remaining.empty()) out.units_remaining.push_back(units_remaining[i]);
    if (!group_id.empty()) out.group_id.push_back(group_id[i]);
  }
  out.column_names = column_names;
  out.candidate_is_null = candidate_is_null;
  return out;
}

Matrix CaseControlData::columns(const std::vector<int>& cols) const {
  Matrix out(markers.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= markers.cols())
      throw PreconditionError("columns: index out of range");
    out.col(static_cast<Eigen::Index>(j)) = markers.col(cols[j]);
  }
  return out;
}

ScenarioConfig correct_model_scenario(double mu_established, double mu_candidate, int n_cases,
                                      int n_controls) {
  ScenarioConfig c;
  c.mu_case = Vector{{mu_established, mu_candidate}};
  c.cov_case = compound_symmetric(2, 0.2);
  c.cov_control = compound_symmetric(2, 0.2);
  c.n_cases = n_cases;
  c.n_controls = n_controls;
  c.label = "correct";
  return c;
}

ScenarioConfig misspecified_scenario(double mu_established, double mu_candidate, int n_cases,
                                     int n_controls) {
  ScenarioConfig c = correct_model_scenario(mu_established, mu_candidate, n_cases, n_controls);
  c.cov_control = compound_symmetric(2, 0.1);
  c.label = "misspecified";
  return c;
}

CaseControlData generate_mvn_panel(const ScenarioConfig& config, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return generate_mvn_panel(config, rng);
}

CaseControlData generate_mvn_panel(const ScenarioConfig& config, Rng& rng) {
  config.validate();
  const int d = config.dims();
  const Matrix l_case = cholesky_or_throw(config.cov_case, "cov_case");
  const Matrix l_control = cholesky_or_throw(config.cov_control, "cov_control");

  CaseControlData data;
  Vector mu = config.mu_case;
  if (config.mixture_gamma) {
    std::bernoulli_distribution is_null(*config.mixture_gamma);
    const bool null_marker = is_null(rng);
    mu[d - 1] = null_marker ? config.mu_alt_components[0] : config.mu_alt_components[1];
    data.candidate_is_null = null_marker;
  }
  const int n = config.n_cases + config.n_controls;
  data.markers.resize(n, d);
  fill_rows(data.markers, 0, config.n_cases, mu, l_case, rng);
  fill_rows(data.markers, config.n_cases, config.n_controls, Vector::Zero(d), l_control, rng);
  data.labels.assign(n, 0);
  std::fill_n(data.labels.begin(), config.n_cases, 1);
  data.units_remaining.assign(n, 0);
  data.group_id.assign(n, 0);
  for (int j = 0; j < d; ++j) data.column_names.push_back("X" + std::to_string(j + 1));
  return data;
}

CaseControlData redraw_candidate(const CaseControlData& base, const ScenarioConfig& config,
                                 Rng& rng) {
  config.validate();
  const int d = config.dims();
  if (base.n_markers() != d) throw PreconditionError("redraw_candidate: column count mismatch");
  CaseControlData out = base;
  double cand_mean = config.mu_case[d - 1];
  if (config.mixture_gamma) {
    std::bernoulli_distribution is_null(*config.mixture_gamma);
    const bool null_marker = is_null(rng);
    cand_mean = null_marker ? config.mu_alt_components[0] : config.mu_alt_components[1];
    out.candidate_is_null = null_marker;
  }
  std::normal_distribution<double> z01;
  for (int stratum = 0; stratum < 2; ++stratum) {
    const Matrix& cov = stratum == 1 ? config.cov_case : config.cov_control;
    Vector mean = stratum == 1 ? Vector(config.mu_case) : Vector(Vector::Zero(d));
    if (stratum == 1) mean[d - 1] = cand_mean;
    const int e = d - 1;
    Vector weights = Vector::Zero(e);
    double cond_var = cov(e, e);
    if (e > 0) {
      const Matrix see = cov.topLeftCorner(e, e);
      const Vector sen = cov.col(e).head(e);
      weights = see.llt().solve(sen);
      cond_var -= sen.dot(weights);
    }
    const double cond_sd = std::sqrt(cond_var);
    for (int i = 0; i < out.n(); ++i) {
      if (out.labels[i] != stratum) continue;
      double m = mean[e];
      if (e > 0) m += weights.dot(out.markers.row(i).head(e).transpose() - mean.head(e));
      out.markers(i, e) = m + cond_sd * z01(rng);
    }
  }
  return out;
}

double closed_form_roc(const Vector& mu, const Matrix& cov, double t) {
  if (!(t > 0.0 && t < 1.0)) throw DomainError("closed_form_roc: t must lie in (0,1)");
  Eigen::LLT<Matrix> llt(cov);
  if (llt.info() != Eigen::Success) throw ConfigError("closed_form_roc: cov not positive definite");
  const double q = mu.dot(llt.solve(mu));
  return norm_cdf(std::sqrt(std::max(q, 0.0)) + norm_quantile(t));
}

void assign_groups(CaseControlData& data, int kappa, std::uint64_t seed) {
  if (kappa < 1) throw ConfigError("assign_groups: kappa must be >= 1");
  Rng rng(substream_seed(seed, 0x67726f7570ULL));  // "group"
  data.group_id.assign(data.labels.size(), 0);
  for (int stratum = 1; stratum >= 0; --stratum) {
    IndexList ids;
    for (int i = 0; i < data.n(); ++i)
      if (data.labels[i] == stratum) ids.push_back(i);
    std::shuffle(ids.begin(), ids.end(), rng);
    for (std::size_t k = 0; k < ids.size(); ++k)
      data.group_id[ids[k]] = static_cast<int>(k % static_cast<std::size_t>(kappa));
  }
}

IndexList group_members(const CaseControlData& data, int group) {
  IndexList ids;
  for (int i = 0; i < data.n(); ++i)
    if (data.group_id[i] == group) ids.push_back(i);
  return ids;
}

CaseControlData load_csv(const std::string& path, const std::string& label_column,
                         const std::vector<std::string>& marker_columns,
                         const std::vector<std::string>& log_columns) {
  const csv::Table table = csv::read_file(path);
  const auto label_pos = table.find(label_column);
  if (!label_pos) throw ParseError("label column '" + label_column + "' not found", 0);
  if (marker_columns.empty()) throw ConfigError("load_csv: no marker columns requested");
  std::vector<std::size_t> pos;
  std::vector<bool> take_log;
  for (const auto& name : marker_columns) {
    const auto p = table.find(name);
    if (!p) throw ParseError("marker column '" + name + "' not found", 0);
    pos.push_back(*p);
    take_log.push_back(std::find(log_columns.begin(), log_columns.end(), name) != log_columns.end());
  }
  for (const auto& name : log_columns)
    if (std::find(marker_columns.begin(), marker_columns.end(), name) == marker_columns.end())
      throw ConfigError("log column '" + name + "' is not a marker column");

  CaseControlData data;
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  data.markers.resize(n, static_cast<Eigen::Index>(pos.size()));
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    const std::size_t rownum = static_cast<std::size_t>(i) + 1;
    double lab = 0.0;
    try {
      lab = csv::parse_double(row[*label_pos]);
    } catch (const std::invalid_argument&) {
      throw ParseError("row " + std::to_string(rownum) + ": label is not numeric", rownum);
    }
    if (lab != 0.0 && lab != 1.0)
      throw ParseError("row " + std::to_string(rownum) + ": label must be 0 or 1", rownum);
    data.labels.push_back(static_cast<int>(lab));
    for (std::size_t j = 0; j < pos.size(); ++j) {
      const std::string& field = row[pos[j]];
      if (field.empty() || field == "NA" || field == "NaN" || field == "nan")
        throw ParseError("row " + std::to_string(rownum) + ": missing value in column '" +
                             marker_columns[j] + "'",
                         rownum);
      double v = 0.0;
      try {
        v = csv::parse_double(field);
      } catch (const std::invalid_argument&) {
        throw ParseError("row " + std::to_string(rownum) + ": non-numeric value in column '" +
                             marker_columns[j] + "'",
                         rownum);
      }
      if (!std::isfinite(v))
        throw ParseError("row " + std::to_string(rownum) + ": non-finite value", rownum);
      if (take_log[j]) {
        if (v <= 0.0)
          throw ParseError("row " + std::to_string(rownum) + ": non-positive value in column '" +
                               marker_columns[j] + "' cannot be log transformed",
                           rownum);
        v = std::log(v);
      }
      data.markers(i, static_cast<Eigen::Index>(j)) = v;
    }
  }
  if (data.n_cases() < 1 || data.n_controls() < 1)
    throw ConfigError("load_csv: need at least one case and one control");
  data.units_remaining.assign(data.labels.size(), 0);
  data.group_id.assign(data.labels.size(), 0);
  data.column_names = marker_columns;
  return data;
}

void write_csv(const CaseControlData& data, const std::string& path,
               const std::string& label_column) {
  csv::Table t;
  t.header.push_back(label_column);
  for (int j = 0; j < data.n_markers(); ++j)
    t.header.push_back(j < static_cast<int>(data.column_names.size()) ? data.column_names[j]
                                                                       : "X" + std::to_string(j + 1));
  for (int i = 0; i < data.n(); ++i) {
    std::vector<std::string> row{std::to_string(data.labels[i])};
    for (int j = 0; j < data.n_markers(); ++j) row.push_back(csv::format_exact(data.markers(i, j)));
    t.rows.push_back(std::move(row));
  }
  csv::write_file(path, t);
}

}  // namespace seqroc
