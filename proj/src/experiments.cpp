#include "blindrank/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "blindrank/errors.hpp"
#include "blindrank/io.hpp"
#include "blindrank/ranking.hpp"
#include "blindrank/rng.hpp"
#include "blindrank/votes.hpp"

namespace blindrank {

using nlohmann::json;

namespace {

// Seed-stream tags; every derived seed is mix_seed-chained from these so
// reruns with the same config reproduce outputs byte for byte.
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kTrialStream = 2;
constexpr std::uint64_t kDrawStream = 3;

constexpr long kLargeMCap = 10000;

std::uint64_t graph_seed(std::uint64_t seed, int attempt) {
  return mix_seed(mix_seed(seed, kGraphStream), static_cast<std::uint64_t>(attempt));
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(mix_seed(seed, kTrialStream), a), b);
}

std::uint64_t fnv1a_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::filesystem::path ensure_output_dir(const ExperimentConfig& cfg) {
  std::filesystem::path dir(cfg.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory: " + cfg.output_dir);
  return dir;
}

void write_manifest(const ExperimentConfig& cfg, const std::filesystem::path& dir) {
  const std::string cfg_text = cfg.to_json_text();
  json j;
  j["tool"] = "blindrank";
  j["version"] = "0.1.0";
  j["config"] = json::parse(cfg_text);
  j["config_hash"] = hex64(fnv1a_hash(cfg_text));
  j["seed"] = cfg.seed;
  write_text_file((dir / "manifest.json").string(), j.dump(2) + "\n");
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += "\"";
  return out;
}

double completeness_at(const Eigen::VectorXd& u_hat, double tau) {
  const int n = static_cast<int>(u_hat.size());
  long kept = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(u_hat(i) - u_hat(j)) > tau) ++kept;
    }
  }
  return static_cast<double>(kept) / (static_cast<double>(n) * (n - 1) / 2.0);
}

int median_centrality_node(const CentralityVector& u) {
  const int n = static_cast<int>(u.values.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&u](int a, int b) { return u.values(a) < u.values(b); });
  return idx[n / 2];
}

struct DrawnGraph {
  Graph graph;
  int redraws = 0;
};

DrawnGraph draw_connected(const std::function<Graph(std::uint64_t)>& generate,
                          const GraphFilter& filter, std::uint64_t seed,
                          int max_attempts = 1000) {
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Graph g = generate(graph_seed(seed, attempt));
    if (!is_connected(g)) continue;
    if (!leading_matches_centrality(filter, g)) continue;
    return DrawnGraph{std::move(g), attempt};
  }
  throw NumericError("no usable graph draw after repeated attempts");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (experiment != "er" && experiment != "crgm" && experiment != "senate") {
    throw ConfigError("experiment must be one of er, crgm, senate");
  }
  if (n < 2) throw ConfigError("experiments need n >= 2");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (m_values.empty()) throw ConfigError("m_values must be non-empty");
  for (std::size_t k = 0; k + 1 < m_values.size(); ++k) {
    if (m_values[k] >= m_values[k + 1]) {
      throw ConfigError("m_values must be strictly increasing");
    }
  }
  for (long m : m_values) {
    if (m < 1) throw ConfigError("sample sizes must be positive");
    if (m > kLargeMCap && !allow_large_m) {
      throw ConfigError("m > 10000 requires allow_large_m");
    }
  }
  if (centrality_draws < 1) throw ConfigError("centrality_draws must be at least 1");
  if (pairwise_m < 1) throw ConfigError("pairwise_m must be positive");
  if (pairwise_m > kLargeMCap && !allow_large_m) {
    throw ConfigError("pairwise_m > 10000 requires allow_large_m");
  }
  for (double t : tau_grid) {
    if (!(t > 0.0)) throw ConfigError("tau grid values must be positive");
  }
  noise_kind_from_string(noise);  // rejects unknown kinds
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed experiment config: ") + e.what());
  }
  ExperimentConfig cfg;
  cfg.experiment = j.value("experiment", cfg.experiment);
  cfg.n = j.value("n", cfg.n);
  cfg.p = j.value("p", cfg.p);
  if (j.contains("gammas")) cfg.gammas = j["gammas"].get<std::vector<double>>();
  if (j.contains("filter")) cfg.filter_json = j["filter"].dump();
  cfg.noise = j.value("noise", cfg.noise);
  if (j.contains("m_values")) cfg.m_values = j["m_values"].get<std::vector<long>>();
  cfg.trials = j.value("trials", cfg.trials);
  cfg.centrality_draws = j.value("centrality_draws", cfg.centrality_draws);
  cfg.pairwise_m = j.value("pairwise_m", cfg.pairwise_m);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("tau_grid")) cfg.tau_grid = j["tau_grid"].get<std::vector<double>>();
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  cfg.allow_large_m = j.value("allow_large_m", cfg.allow_large_m);
  cfg.votes_path = j.value("votes_path", cfg.votes_path);
  cfg.nominate_path = j.value("nominate_path", cfg.nominate_path);
  cfg.congress = j.value("congress", cfg.congress);
  cfg.chamber = j.value("chamber", cfg.chamber);
  cfg.party_code = j.value("party_code", cfg.party_code);
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  return from_json_text(read_text_file(path));
}

std::string ExperimentConfig::to_json_text() const {
  json j;
  j["experiment"] = experiment;
  j["n"] = n;
  j["p"] = p;
  j["gammas"] = gammas;
  j["filter"] = json::parse(filter_json);
  j["noise"] = noise;
  j["m_values"] = m_values;
  j["trials"] = trials;
  j["centrality_draws"] = centrality_draws;
  j["pairwise_m"] = pairwise_m;
  j["seed"] = seed;
  j["tau_grid"] = tau_grid;
  j["output_dir"] = output_dir;
  j["allow_large_m"] = allow_large_m;
  j["votes_path"] = votes_path;
  j["nominate_path"] = nominate_path;
  j["congress"] = congress;
  j["chamber"] = chamber;
  j["party_code"] = party_code;
  return j.dump(2);
}

double resolved_edge_probability(const ExperimentConfig& cfg) {
  return cfg.p < 0.0 ? std::log(static_cast<double>(cfg.n)) / cfg.n : cfg.p;
}

ErExperimentResult run_experiment_er(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto dir = ensure_output_dir(cfg);
  const GraphFilter filter = filter_from_json(cfg.filter_json);
  const NoiseKind noise = noise_kind_from_string(cfg.noise);
  const double p = resolved_edge_probability(cfg);

  const DrawnGraph drawn = draw_connected(
      [&cfg, p](std::uint64_t s) { return gen_erdos_renyi(cfg.n, p, s); },
      filter, cfg.seed);
  const Graph& g = drawn.graph;
  const CentralityVector u = exact_centrality(g);
  const FilterOperator op = build_filter_operator(filter, g);
  const int ref = median_centrality_node(u);
  const double tie_tol = 1e-9 * u.values.cwiseAbs().maxCoeff();

  ErExperimentResult result;
  result.m_values = cfg.m_values;
  result.redraws = drawn.redraws;
  result.ref_node = ref;

  std::ostringstream rates_csv, mvt_csv;
  rates_csv << "node,m,u_diff,trials,errors,error_rate\n";
  mvt_csv << "m,trial,min_viable_threshold,completeness\n";

  for (std::size_t mi = 0; mi < cfg.m_values.size(); ++mi) {
    const long m = cfg.m_values[mi];
    std::vector<long> errors(cfg.n, 0);
    double mvt_sum = 0.0, compl_sum = 0.0;
    for (int t = 0; t < cfg.trials; ++t) {
      const SampleCovariance cov = streamed_covariance(
          op, cfg.n, static_cast<int>(m), noise, trial_seed(cfg.seed, mi, t));
      const CentralityEstimate est = estimate_centrality(cov);
      for (int i = 0; i < cfg.n; ++i) {
        if (i == ref) continue;
        const double true_diff = u.values(i) - u.values(ref);
        if (std::abs(true_diff) <= tie_tol) continue;
        const double est_diff = est.u_hat(i) - est.u_hat(ref);
        const bool concordant = (true_diff > 0.0 && est_diff > 0.0) ||
                                (true_diff < 0.0 && est_diff < 0.0);
        if (!concordant) ++errors[i];
      }
      const double mvt = min_viable_threshold(u.values, est.u_hat);
      mvt_sum += mvt;
      const double compl_t = completeness_at(est.u_hat, mvt);
      compl_sum += compl_t;
      mvt_csv << m << ',' << t << ',' << format_value(mvt) << ','
              << format_value(compl_t) << '\n';
    }
    for (int i = 0; i < cfg.n; ++i) {
      if (i == ref) continue;
      const double true_diff = u.values(i) - u.values(ref);
      if (std::abs(true_diff) <= tie_tol) continue;
      const double rate = static_cast<double>(errors[i]) / cfg.trials;
      result.error_cells.push_back({i, m, rate});
      rates_csv << (i + 1) << ',' << m << ',' << format_value(std::abs(true_diff))
                << ',' << cfg.trials << ',' << errors[i] << ','
                << format_value(rate) << '\n';
    }
    result.mean_min_viable.push_back(mvt_sum / cfg.trials);
    result.mean_completeness.push_back(compl_sum / cfg.trials);
  }

  // Degenerate smoke configurations (a single m, or rates all on the 0/1
  // boundary) leave one of the fits undefined; the run still emits its
  // tables.
  std::string threshold_fit_note, error_fit_note;
  try {
    result.threshold_fit = fit_inverse_sqrt(cfg.m_values, result.mean_min_viable);
    result.has_threshold_fit = true;
  } catch (const std::exception& e) {
    threshold_fit_note = e.what();
  }
  try {
    result.error_fit = fit_error_rate_model(result.error_cells, u, ref);
    result.has_error_fit = true;
  } catch (const std::exception& e) {
    error_fit_note = e.what();
  }

  write_text_file((dir / "error_rates.csv").string(), rates_csv.str());
  write_csv_schema((dir / "error_rates.csv").string(),
                   {{"node", "int (1-based)"},
                    {"m", "int"},
                    {"u_diff", "double"},
                    {"trials", "int"},
                    {"errors", "int"},
                    {"error_rate", "double"}});
  write_text_file((dir / "min_viable.csv").string(), mvt_csv.str());
  write_csv_schema((dir / "min_viable.csv").string(),
                   {{"m", "int"},
                    {"trial", "int"},
                    {"min_viable_threshold", "double"},
                    {"completeness", "double"}});

  std::ostringstream fit_csv;
  fit_csv << "m,mean_min_viable_threshold,fitted,mean_completeness\n";
  for (std::size_t mi = 0; mi < cfg.m_values.size(); ++mi) {
    fit_csv << cfg.m_values[mi] << ','
            << format_value(result.mean_min_viable[mi]) << ',';
    if (result.has_threshold_fit) {
      fit_csv << format_value(
          threshold_prescription(result.threshold_fit.c, cfg.m_values[mi]));
    }
    fit_csv << ',' << format_value(result.mean_completeness[mi]) << '\n';
  }
  write_text_file((dir / "threshold_fit.csv").string(), fit_csv.str());
  write_csv_schema((dir / "threshold_fit.csv").string(),
                   {{"m", "int"},
                    {"mean_min_viable_threshold", "double"},
                    {"fitted", "double"},
                    {"mean_completeness", "double"}});

  json summary;
  summary["experiment"] = "er";
  summary["n"] = cfg.n;
  summary["p"] = p;
  summary["redraws"] = result.redraws;
  summary["ref_node"] = ref + 1;
  if (result.has_threshold_fit) {
    summary["threshold_fit"] = {{"c", result.threshold_fit.c},
                                {"r_squared", result.threshold_fit.r_squared}};
  } else {
    summary["threshold_fit"] = nullptr;
    summary["threshold_fit_note"] = threshold_fit_note;
  }
  if (result.has_error_fit) {
    summary["error_fit"] = {{"c0", result.error_fit.c0},
                            {"c1", result.error_fit.c1},
                            {"r_squared", result.error_fit.r_squared},
                            {"cells_used", result.error_fit.cells_used}};
  } else {
    summary["error_fit"] = nullptr;
    summary["error_fit_note"] = error_fit_note;
  }
  summary["mean_min_viable"] = result.mean_min_viable;
  summary["mean_completeness"] = result.mean_completeness;
  write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");
  write_manifest(cfg, dir);
  return result;
}

CrgmExperimentResult run_experiment_crgm(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.gammas.empty()) throw ConfigError("crgm experiment needs gammas");
  const auto dir = ensure_output_dir(cfg);
  const GraphFilter filter = filter_from_json(cfg.filter_json);
  const NoiseKind noise = noise_kind_from_string(cfg.noise);

  CrgmExperimentResult result;
  result.m_values = cfg.m_values;

  std::ostringstream mean_csv, success_csv, difficulty_csv, curve_csv;
  mean_csv << "node,gamma,mean_empirical,predicted\n";
  success_csv << "i,j,gamma,m,trials,successes,success_rate\n";
  difficulty_csv << "i,j,gamma,inv_sq_diff\n";
  curve_csv << "gamma,m,mean_min_viable_threshold,fitted,mean_completeness\n";

  for (std::size_t gi = 0; gi < cfg.gammas.size(); ++gi) {
    const double gamma = cfg.gammas[gi];
    if (!(gamma > 0.0 && gamma <= 1.0)) {
      throw ConfigError("crgm gammas must lie in (0,1]");
    }
    const CrgmModel model = crgm_predicted_centrality(cfg.n, gamma);
    const std::uint64_t gamma_seed = mix_seed(cfg.seed, 1000 + gi);

    // Mean empirical centrality over independent draws.
    Eigen::VectorXd mean_u = Eigen::VectorXd::Zero(cfg.n);
    int used = 0;
    for (int d = 0; d < cfg.centrality_draws; ++d) {
      Graph g = gen_mixed_crgm(cfg.n, gamma,
                               mix_seed(mix_seed(gamma_seed, kDrawStream), d));
      if (!is_connected(g)) continue;  // effectively never at these densities
      mean_u += exact_centrality(g).values;
      ++used;
    }
    if (used == 0) throw NumericError("no connected mixed-model draws");
    mean_u /= static_cast<double>(used);
    for (int i = 0; i < cfg.n; ++i) {
      mean_csv << (i + 1) << ',' << format_value(gamma) << ','
               << format_value(mean_u(i)) << ','
               << format_value(model.predicted.values(i)) << '\n';
    }

    CrgmGammaResult gres;
    gres.gamma = gamma;
    gres.prediction_rel_l2 =
        (mean_u - model.predicted.values).norm() / model.predicted.values.norm();

    // Ranking experiments run on one fixed draw per gamma.
    const DrawnGraph drawn = draw_connected(
        [&cfg, gamma](std::uint64_t s) { return gen_mixed_crgm(cfg.n, gamma, s); },
        filter, gamma_seed);
    gres.redraws = drawn.redraws;
    const CentralityVector u0 = exact_centrality(drawn.graph);
    const FilterOperator op = build_filter_operator(filter, drawn.graph);

    // Pairwise success rates at the configured sample size.
    const std::size_t pair_total = static_cast<std::size_t>(cfg.n) * (cfg.n - 1) / 2;
    std::vector<int> successes(pair_total, 0);
    for (int t = 0; t < cfg.trials; ++t) {
      const SampleCovariance cov = streamed_covariance(
          op, cfg.n, static_cast<int>(cfg.pairwise_m), noise,
          trial_seed(gamma_seed, 7000, t));
      const CentralityEstimate est = estimate_centrality(cov);
      std::size_t k = 0;
      for (int i = 0; i < cfg.n; ++i) {
        for (int j = i + 1; j < cfg.n; ++j, ++k) {
          const double td = u0.values(j) - u0.values(i);
          const double ed = est.u_hat(j) - est.u_hat(i);
          if ((td > 0.0 && ed > 0.0) || (td < 0.0 && ed < 0.0)) ++successes[k];
        }
      }
    }
    {
      std::size_t k = 0;
      for (int i = 0; i < cfg.n; ++i) {
        for (int j = i + 1; j < cfg.n; ++j, ++k) {
          success_csv << (i + 1) << ',' << (j + 1) << ',' << format_value(gamma)
                      << ',' << cfg.pairwise_m << ',' << cfg.trials << ','
                      << successes[k] << ','
                      << format_value(static_cast<double>(successes[k]) / cfg.trials)
                      << '\n';
          const double pd = model.predicted.values(j) - model.predicted.values(i);
          difficulty_csv << (i + 1) << ',' << (j + 1) << ',' << format_value(gamma)
                         << ',' << format_value(1.0 / (pd * pd)) << '\n';
        }
      }
    }

    // Threshold and completeness curves.
    for (std::size_t mi = 0; mi < cfg.m_values.size(); ++mi) {
      const long m = cfg.m_values[mi];
      double mvt_sum = 0.0, compl_sum = 0.0;
      for (int t = 0; t < cfg.trials; ++t) {
        const SampleCovariance cov = streamed_covariance(
            op, cfg.n, static_cast<int>(m), noise,
            trial_seed(gamma_seed, mi, t));
        const CentralityEstimate est = estimate_centrality(cov);
        const double mvt = min_viable_threshold(u0.values, est.u_hat);
        mvt_sum += mvt;
        compl_sum += completeness_at(est.u_hat, mvt);
      }
      gres.mean_min_viable.push_back(mvt_sum / cfg.trials);
      gres.mean_completeness.push_back(compl_sum / cfg.trials);
    }
    gres.threshold_fit = fit_inverse_sqrt(cfg.m_values, gres.mean_min_viable);
    for (std::size_t mi = 0; mi < cfg.m_values.size(); ++mi) {
      curve_csv << format_value(gamma) << ',' << cfg.m_values[mi] << ','
                << format_value(gres.mean_min_viable[mi]) << ','
                << format_value(threshold_prescription(gres.threshold_fit.c,
                                                       cfg.m_values[mi]))
                << ',' << format_value(gres.mean_completeness[mi]) << '\n';
    }
    result.per_gamma.push_back(std::move(gres));
  }

  write_text_file((dir / "centrality_mean.csv").string(), mean_csv.str());
  write_csv_schema((dir / "centrality_mean.csv").string(),
                   {{"node", "int (1-based)"},
                    {"gamma", "double"},
                    {"mean_empirical", "double"},
                    {"predicted", "double"}});
  write_text_file((dir / "pairwise_success.csv").string(), success_csv.str());
  write_csv_schema((dir / "pairwise_success.csv").string(),
                   {{"i", "int (1-based)"},
                    {"j", "int (1-based)"},
                    {"gamma", "double"},
                    {"m", "int"},
                    {"trials", "int"},
                    {"successes", "int"},
                    {"success_rate", "double"}});
  write_text_file((dir / "difficulty.csv").string(), difficulty_csv.str());
  write_csv_schema((dir / "difficulty.csv").string(),
                   {{"i", "int (1-based)"},
                    {"j", "int (1-based)"},
                    {"gamma", "double"},
                    {"inv_sq_diff", "double"}});
  write_text_file((dir / "threshold_curves.csv").string(), curve_csv.str());
  write_csv_schema((dir / "threshold_curves.csv").string(),
                   {{"gamma", "double"},
                    {"m", "int"},
                    {"mean_min_viable_threshold", "double"},
                    {"fitted", "double"},
                    {"mean_completeness", "double"}});

  json summary;
  summary["experiment"] = "crgm";
  summary["n"] = cfg.n;
  json per_gamma = json::array();
  for (const CrgmGammaResult& r : result.per_gamma) {
    per_gamma.push_back({{"gamma", r.gamma},
                         {"prediction_rel_l2", r.prediction_rel_l2},
                         {"redraws", r.redraws},
                         {"mean_min_viable", r.mean_min_viable},
                         {"mean_completeness", r.mean_completeness},
                         {"threshold_fit_c", r.threshold_fit.c},
                         {"threshold_fit_r_squared", r.threshold_fit.r_squared}});
  }
  summary["per_gamma"] = std::move(per_gamma);
  if (result.per_gamma.size() == 2) {
    json ratios = json::array();
    for (std::size_t mi = 0; mi < cfg.m_values.size(); ++mi) {
      const double a = result.per_gamma[0].mean_min_viable[mi];
      const double b = result.per_gamma[1].mean_min_viable[mi];
      ratios.push_back(b / a);
    }
    summary["min_viable_ratio_second_over_first"] = std::move(ratios);
  }
  write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");
  write_manifest(cfg, dir);
  return result;
}

SenateExperimentResult run_experiment_senate(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.votes_path.empty()) throw ConfigError("senate experiment needs votes_path");
  const auto dir = ensure_output_dir(cfg);

  VoteFilter vf;
  if (cfg.congress != 0) vf.congress = cfg.congress;
  if (!cfg.chamber.empty()) vf.chamber = cfg.chamber;
  if (cfg.party_code != 0) vf.party_code = cfg.party_code;
  const VoteSignalBatch votes = ingest_votes(cfg.votes_path, vf);

  SenateExperimentResult result;
  result.m = static_cast<int>(votes.samples.rows());
  result.n = static_cast<int>(votes.samples.cols());

  const int half = (result.m + 1) / 2;
  const CentralityEstimate full = estimate_from_matrix(
      sample_covariance_matrix(votes.samples), result.m);
  const CentralityEstimate first_half = estimate_from_matrix(
      sample_covariance_matrix(votes.samples.topRows(half)), half);
  result.half_full_cosine = full.u_hat.dot(first_half.u_hat);

  // Ranking table ordered by the full-sample estimate, most central first.
  std::vector<int> order(result.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (full.u_hat(a) != full.u_hat(b)) return full.u_hat(a) > full.u_hat(b);
    return votes.member_ids[a] < votes.member_ids[b];
  });
  std::vector<int> rank_of(result.n);
  for (int r = 0; r < result.n; ++r) rank_of[order[r]] = r + 1;

  std::ostringstream est_csv;
  est_csv << "icpsr,name,u_full,u_half,rank_full\n";
  for (int c = 0; c < result.n; ++c) {
    est_csv << votes.member_ids[c] << ',' << csv_quote(votes.node_labels[c]) << ','
            << format_value(full.u_hat(c)) << ','
            << format_value(first_half.u_hat(c)) << ',' << rank_of[c] << '\n';
  }
  write_text_file((dir / "estimates.csv").string(), est_csv.str());
  write_csv_schema((dir / "estimates.csv").string(),
                   {{"icpsr", "int"},
                    {"name", "string"},
                    {"u_full", "double"},
                    {"u_half", "double"},
                    {"rank_full", "int"}});

  json summary;
  summary["experiment"] = "senate";
  summary["n"] = result.n;
  summary["m"] = result.m;
  summary["m_half"] = half;
  summary["half_full_cosine"] = result.half_full_cosine;

  if (!cfg.nominate_path.empty()) {
    const auto coords = read_coordinates_csv(cfg.nominate_path);
    Eigen::VectorXd dim1(result.n), dim2(result.n);
    int missing = 0;
    for (int c = 0; c < result.n; ++c) {
      const auto it = coords.find(votes.member_ids[c]);
      if (it == coords.end()) {
        ++missing;
        continue;
      }
      dim1(c) = it->second.first;
      dim2(c) = it->second.second;
    }
    if (missing > 0) {
      throw DataError("coordinates file is missing " + std::to_string(missing) +
                      " ingested members");
    }
    result.have_coordinates = true;
    result.dim1 = spearman(full.u_hat, dim1);
    result.dim2 = spearman(full.u_hat, dim2);
    summary["spearman_dim1"] = {{"rho", result.dim1.rho},
                                {"p_value", result.dim1.p_value}};
    summary["spearman_dim2"] = {{"rho", result.dim2.rho},
                                {"p_value", result.dim2.p_value}};

    // Concordance/discordance sweep against each coordinate ordering.
    std::vector<double> grid = cfg.tau_grid;
    if (grid.empty()) {
      double d_max = 0.0;
      for (int i = 0; i < result.n; ++i) {
        for (int j = i + 1; j < result.n; ++j) {
          d_max = std::max(d_max, std::abs(full.u_hat(i) - full.u_hat(j)));
        }
      }
      for (int k = 1; k <= 40; ++k) grid.push_back(d_max * k / 40.0);
    }
    std::ostringstream sweep_csv;
    sweep_csv << "dimension,tau,concordant,discordant,abstained,tied_pairs,completeness\n";
    for (int dim = 1; dim <= 2; ++dim) {
      const NodeOrdering truth = NodeOrdering::weak_from_vector(
          dim == 1 ? dim1 : dim2, 0.0, "coordinates_dim" + std::to_string(dim));
      for (double tau : grid) {
        const NodeOrdering est = NodeOrdering::partial_from_vector(
            full.u_hat, tau, "estimate");
        const ConcordanceReport rep = concordance(truth, est);
        sweep_csv << dim << ',' << format_value(tau) << ',' << rep.concordant
                  << ',' << rep.discordant << ',' << rep.abstained << ','
                  << rep.tied_pairs << ',' << format_value(rep.completeness)
                  << '\n';
      }
    }
    write_text_file((dir / "threshold_sweep.csv").string(), sweep_csv.str());
    write_csv_schema((dir / "threshold_sweep.csv").string(),
                     {{"dimension", "int"},
                      {"tau", "double"},
                      {"concordant", "int"},
                      {"discordant", "int"},
                      {"abstained", "int"},
                      {"tied_pairs", "int"},
                      {"completeness", "double"}});
  } else {
    summary["spearman_skipped"] = "no coordinates file supplied";
    std::cerr << "note: no coordinates file supplied; skipping rank correlations\n";
  }

  write_text_file((dir / "summary.json").string(), summary.dump(2) + "\n");
  write_manifest(cfg, dir);
  return result;
}

}  // namespace blindrank
