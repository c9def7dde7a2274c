#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blindrank/analysis.hpp"

namespace blindrank {

/// Configuration for the experiment runners. Loadable from JSON; the CLI
/// layers flag overrides on top.
struct ExperimentConfig {
  std::string experiment = "er";  // er | crgm | senate
  int n = 100;
  double p = -1.0;  // er edge probability; < 0 selects log(n)/n
  std::vector<double> gammas = {0.2, 0.8};
  std::string filter_json = R"({"type":"spectral","name":"sqrt_abs"})";
  std::string noise = "gaussian";
  std::vector<long> m_values = {100, 1000, 10000};
  int trials = 100;
  int centrality_draws = 100;  // crgm: graph draws behind the mean profile
  long pairwise_m = 1000;      // crgm: sample size of the success matrix
  std::uint64_t seed = 1;
  std::vector<double> tau_grid;  // senate sweep; empty selects an automatic grid
  std::string output_dir = "out";
  // Sample sizes above 10^4 take minutes at desk scale; they must be
  // opted into explicitly.
  bool allow_large_m = false;
  std::string votes_path;
  std::string nominate_path;
  int congress = 114;            // 0 disables the filter
  std::string chamber = "Senate";  // empty disables
  int party_code = 200;          // 0 disables

  void validate() const;
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
  std::string to_json_text() const;
};

double resolved_edge_probability(const ExperimentConfig& cfg);

struct ErExperimentResult {
  std::vector<long> m_values;
  std::vector<double> mean_min_viable;
  std::vector<double> mean_completeness;
  bool has_threshold_fit = false;  // needs >= 2 sample sizes
  InverseSqrtFit threshold_fit;
  bool has_error_fit = false;  // needs >= 3 rates strictly inside (0,1)
  ErrorRateModelFit error_fit;
  std::vector<ErrorRateCell> error_cells;
  int redraws = 0;
  int ref_node = 0;  // 0-based
};

/// Single connected graph, per-trial signal draws. Emits per-node error
/// rates against the median-centrality node, per-trial minimum viable
/// thresholds with their completeness, the inverse-sqrt threshold fit,
/// and the error-rate regression. All outputs are plain CSV/JSON tables.
ErExperimentResult run_experiment_er(const ExperimentConfig& cfg);

struct CrgmGammaResult {
  double gamma = 0.0;
  double prediction_rel_l2 = 0.0;
  int redraws = 0;
  std::vector<double> mean_min_viable;
  std::vector<double> mean_completeness;
  InverseSqrtFit threshold_fit;
};

struct CrgmExperimentResult {
  std::vector<long> m_values;
  std::vector<CrgmGammaResult> per_gamma;
};

/// Mean centrality profile against the mixed-model prediction, pairwise
/// ranking success rates at a fixed sample size, the (u_i-u_j)^-2
/// difficulty surface, and threshold/completeness curves per gamma.
CrgmExperimentResult run_experiment_crgm(const ExperimentConfig& cfg);

struct SenateExperimentResult {
  int n = 0;
  int m = 0;
  double half_full_cosine = 0.0;
  bool have_coordinates = false;
  SpearmanResult dim1;
  SpearmanResult dim2;
};

/// Roll-call ingestion, centrality estimates on the full and first-half
/// samples, rank correlations against supplied coordinates, and a
/// concordance/discordance threshold sweep.
SenateExperimentResult run_experiment_senate(const ExperimentConfig& cfg);

}  // namespace blindrank
