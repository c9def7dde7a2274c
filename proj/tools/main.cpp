// blindrank: rank the nodes of a hidden graph by eigenvector centrality
// using only filtered node signals.

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "blindrank/analysis.hpp"
#include "blindrank/errors.hpp"
#include "blindrank/experiments.hpp"
#include "blindrank/io.hpp"
#include "blindrank/ranking.hpp"
#include "blindrank/votes.hpp"

namespace {

using namespace blindrank;
using nlohmann::json;

// Relative paths resolve under $BLINDRANK_OUTPUT_ROOT when it is set.
std::string resolve_output(const std::string& path) {
  const char* root = std::getenv("BLINDRANK_OUTPUT_ROOT");
  if (!root || *root == '\0' || path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(root) / p).string();
}

GraphFilter load_filter(const std::string& spec) {
  // Accepts inline JSON or a path to a JSON file.
  if (!spec.empty() && spec.front() == '{') return filter_from_json(spec);
  return filter_from_json(read_text_file(spec));
}

int cmd_gen_graph(const std::string& kind, int n, double p, double gamma,
                  std::uint64_t seed, const std::string& out) {
  Graph g = [&]() {
    if (kind == "er") return gen_erdos_renyi(n, p, seed);
    if (kind == "crgm") return gen_mixed_crgm(n, gamma, seed);
    return gen_named(kind, n);
  }();
  json params;
  if (kind == "er") params["p"] = p;
  if (kind == "crgm") params["gamma"] = gamma;
  const std::string base = resolve_output(out);
  write_graph_csv(g, base + ".csv");
  write_graph_sidecar(g, kind, seed, params.dump(), base + ".json");
  std::cout << "wrote " << base << ".csv (+ sidecar), n=" << g.n() << "\n";
  return 0;
}

int cmd_gen_signals(const std::string& graph_path, const std::string& filter_spec,
                    int m, const std::string& noise, std::uint64_t seed,
                    const std::string& out) {
  const Graph g = read_graph_csv(graph_path);
  const GraphFilter f = load_filter(filter_spec);
  const SignalBatch b = synthesize_batch(f, g, m, noise_kind_from_string(noise), seed);
  const std::string base = resolve_output(out);
  write_batch(b, base + ".csv", base + ".json");
  std::cout << "wrote " << base << ".csv, m=" << b.m << " n=" << b.samples.cols()
            << "\n";
  return 0;
}

CentralityEstimate estimate_from_input(const std::string& batch_path,
                                       const std::string& cov_path,
                                       double tol, int max_iter) {
  if (!cov_path.empty()) {
    return estimate_from_matrix(read_matrix_csv(cov_path), 0, tol, max_iter);
  }
  const SignalBatch b = read_batch(batch_path + ".csv", batch_path + ".json");
  return estimate_centrality(sample_covariance(b), tol, max_iter);
}

int cmd_estimate(const std::string& batch_path, const std::string& cov_path,
                 double tol, int max_iter, const std::string& out,
                 const std::string& save_cov) {
  if (!save_cov.empty()) {
    if (batch_path.empty()) throw ConfigError("--save-cov needs --batch");
    const SignalBatch b = read_batch(batch_path + ".csv", batch_path + ".json");
    write_matrix_csv(sample_covariance(b).matrix, resolve_output(save_cov));
  }
  const CentralityEstimate est = estimate_from_input(batch_path, cov_path, tol, max_iter);
  json j;
  j["u_hat"] = std::vector<double>(est.u_hat.data(), est.u_hat.data() + est.u_hat.size());
  j["eigengap_hat"] = est.eigengap_hat;
  j["m"] = est.m;
  j["iterations"] = est.iterations;
  j["sign_ambiguous"] = est.sign_ambiguous;
  write_text_file(resolve_output(out), j.dump(2) + "\n");
  std::cout << "wrote " << resolve_output(out) << " (eigengap "
            << est.eigengap_hat << ")\n";
  return 0;
}

int cmd_rank(const std::string& batch_path, const std::string& cov_path,
             double tau, double tol, int max_iter, const std::string& out) {
  const CentralityEstimate est = estimate_from_input(batch_path, cov_path, tol, max_iter);
  const NodeOrdering ordering =
      tau > 0.0 ? NodeOrdering::partial_from_vector(est.u_hat, tau, "cli")
                : NodeOrdering::weak_from_vector(est.u_hat, 0.0, "cli");
  write_ordering_json(ordering, resolve_output(out));
  std::cout << "wrote " << resolve_output(out) << "\n";
  return 0;
}

int cmd_ingest_votes(const std::string& input, int congress,
                     const std::string& chamber, int party, bool validate_only,
                     const std::string& out) {
  if (validate_only) {
    const auto header = validate_votes_schema(input);
    std::cout << "schema ok: " << input << " (" << header.size() << " columns)\n";
    return 0;
  }
  VoteFilter vf;
  if (congress != 0) vf.congress = congress;
  if (!chamber.empty()) vf.chamber = chamber;
  if (party != 0) vf.party_code = party;
  const VoteSignalBatch votes = ingest_votes(input, vf);
  const std::string base = resolve_output(out);
  write_matrix_csv(votes.samples, base + ".csv");
  json j;
  j["m"] = static_cast<int>(votes.samples.rows());
  j["n"] = static_cast<int>(votes.samples.cols());
  // Sidecar matches the batch schema so estimate/rank can consume the
  // output directly; real data carries no noise kind or seed of its own.
  j["noise_kind"] = "gaussian";
  j["seed"] = 0;
  j["filter_id"] = "votes:" + input;
  j["members"] = votes.node_labels;
  j["member_ids"] = votes.member_ids;
  j["rollcalls"] = votes.rollcall_ids;
  write_text_file(base + ".json", j.dump(2) + "\n");
  std::cout << "wrote " << base << ".csv, m=" << votes.samples.rows()
            << " n=" << votes.samples.cols() << "\n";
  return 0;
}

int cmd_metrics(const std::string& truth_path, const std::string& est_path,
                const std::string& x_path, const std::string& y_path,
                const std::string& out) {
  if (!x_path.empty() || !y_path.empty()) {
    if (x_path.empty() || y_path.empty()) {
      throw ConfigError("rank correlation needs both --x and --y");
    }
    const SpearmanResult r = spearman(read_vector_csv(x_path), read_vector_csv(y_path));
    json j;
    j["rho"] = r.rho;
    j["p_value"] = r.p_value;
    write_text_file(resolve_output(out), j.dump(2) + "\n");
    std::cout << "rho=" << r.rho << " p=" << r.p_value << "\n";
    return 0;
  }
  if (truth_path.empty() || est_path.empty()) {
    throw ConfigError("concordance needs --truth and --est ordering files");
  }
  const NodeOrdering truth = read_ordering_json(truth_path);
  const NodeOrdering est = read_ordering_json(est_path);
  const ConcordanceReport rep = concordance(truth, est);
  write_concordance_json(rep, resolve_output(out));
  std::cout << "concordant=" << rep.concordant << " discordant=" << rep.discordant
            << " abstained=" << rep.abstained
            << " completeness=" << rep.completeness << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"blind eigenvector-centrality ranking from graph signals"};
  app.require_subcommand(1);

  // gen-graph
  auto* gen_graph = app.add_subcommand("gen-graph", "generate a graph and write its edge list");
  std::string gg_kind = "er", gg_out = "graph";
  int gg_n = 100;
  double gg_p = -1.0, gg_gamma = 0.8;
  std::uint64_t gg_seed = 1;
  gen_graph->add_option("--kind", gg_kind, "er|crgm|star|path|cycle|complete");
  gen_graph->add_option("--n", gg_n, "node count");
  gen_graph->add_option("--p", gg_p, "er edge probability (< 0 selects log(n)/n)");
  gen_graph->add_option("--gamma", gg_gamma, "crgm mixture in [0,1]");
  gen_graph->add_option("--seed", gg_seed, "rng seed");
  gen_graph->add_option("--out", gg_out, "output basename");

  // gen-signals
  auto* gen_signals = app.add_subcommand("gen-signals", "synthesize filtered noise signals");
  std::string gs_graph, gs_filter = R"({"type":"spectral","name":"sqrt_abs"})",
              gs_noise = "gaussian", gs_out = "batch";
  int gs_m = 1000;
  std::uint64_t gs_seed = 1;
  gen_signals->add_option("--graph", gs_graph, "graph CSV path")->required();
  gen_signals->add_option("--filter", gs_filter, "filter spec JSON (inline or file)");
  gen_signals->add_option("--m", gs_m, "sample count");
  gen_signals->add_option("--noise", gs_noise, "gaussian|rademacher");
  gen_signals->add_option("--seed", gs_seed, "rng seed");
  gen_signals->add_option("--out", gs_out, "output basename");

  // estimate / rank / threshold-rank share inputs
  std::string es_batch, es_cov, es_out = "estimate.json", es_savecov;
  double es_tol = 1e-10;
  int es_maxiter = -1;
  auto* estimate = app.add_subcommand("estimate", "estimate centrality from a batch or covariance");
  estimate->add_option("--batch", es_batch, "batch basename (expects .csv and .json)");
  estimate->add_option("--cov", es_cov, "covariance CSV (bypasses the batch)");
  estimate->add_option("--tol", es_tol, "solver residual tolerance");
  estimate->add_option("--max-iter", es_maxiter, "solver iteration cap");
  estimate->add_option("--out", es_out, "output JSON path");
  estimate->add_option("--save-cov", es_savecov, "also write the sample covariance CSV");

  std::string rk_batch, rk_cov, rk_out = "ranking.json";
  double rk_tol = 1e-10;
  int rk_maxiter = -1;
  auto* rank = app.add_subcommand("rank", "weak ordering from the estimated centrality");
  rank->add_option("--batch", rk_batch, "batch basename");
  rank->add_option("--cov", rk_cov, "covariance CSV");
  rank->add_option("--tol", rk_tol, "solver residual tolerance");
  rank->add_option("--max-iter", rk_maxiter, "solver iteration cap");
  rank->add_option("--out", rk_out, "output JSON path");

  std::string tr_batch, tr_cov, tr_out = "ranking.json";
  double tr_tau = 0.0, tr_tol = 1e-10;
  int tr_maxiter = -1;
  auto* trank = app.add_subcommand("threshold-rank", "partial ordering that abstains within tau");
  trank->add_option("--batch", tr_batch, "batch basename");
  trank->add_option("--cov", tr_cov, "covariance CSV");
  trank->add_option("--tau", tr_tau, "abstention threshold (> 0)")->required();
  trank->add_option("--tol", tr_tol, "solver residual tolerance");
  trank->add_option("--max-iter", tr_maxiter, "solver iteration cap");
  trank->add_option("--out", tr_out, "output JSON path");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a full experiment pipeline");
  std::string ex_which, ex_config, ex_outdir, ex_votes, ex_nominate, ex_filter;
  std::vector<long> ex_m;
  int ex_trials = -1, ex_n = -1;
  double ex_p = -2.0;
  std::vector<double> ex_gammas;
  std::uint64_t ex_seed = 0;
  bool ex_seed_set = false, ex_large_m = false;
  experiment->add_option("which", ex_which, "er|crgm|senate")->required();
  experiment->add_option("--config", ex_config, "experiment config JSON file");
  experiment->add_option("--out-dir", ex_outdir, "output directory override");
  experiment->add_option("--n", ex_n, "node count override");
  experiment->add_option("--p", ex_p, "er edge probability override");
  experiment->add_option("--gammas", ex_gammas, "crgm mixtures override")->delimiter(',');
  experiment->add_option("--m", ex_m, "sample sizes override")->delimiter(',');
  experiment->add_option("--trials", ex_trials, "trials override");
  experiment->add_option("--filter", ex_filter, "filter spec override");
  experiment->add_option("--votes", ex_votes, "roll-call CSV (senate)");
  experiment->add_option("--nominate", ex_nominate, "coordinates CSV (senate)");
  experiment->add_flag("--allow-large-m", ex_large_m, "permit m > 10000");
  auto* seed_opt = experiment->add_option("--seed", ex_seed, "seed override");

  // ingest-votes
  auto* ingest = app.add_subcommand("ingest-votes", "turn roll-call records into signals");
  std::string iv_input, iv_chamber = "Senate", iv_out = "votes";
  int iv_congress = 114, iv_party = 200;
  bool iv_validate = false;
  ingest->add_option("--input", iv_input, "roll-call CSV")->required();
  ingest->add_option("--congress", iv_congress, "congress filter (0 disables)");
  ingest->add_option("--chamber", iv_chamber, "chamber filter (empty disables)");
  ingest->add_option("--party", iv_party, "party code filter (0 disables)");
  ingest->add_flag("--validate-only", iv_validate, "check the schema and exit");
  ingest->add_option("--out", iv_out, "output basename");

  // metrics
  auto* metrics = app.add_subcommand("metrics", "concordance report or rank correlation");
  std::string mt_truth, mt_est, mt_x, mt_y, mt_out = "metrics.json";
  metrics->add_option("--truth", mt_truth, "truth ordering JSON");
  metrics->add_option("--est", mt_est, "estimated ordering JSON");
  metrics->add_option("--x", mt_x, "vector CSV for rank correlation");
  metrics->add_option("--y", mt_y, "vector CSV for rank correlation");
  metrics->add_option("--out", mt_out, "output JSON path");

  try {
    app.parse(argc, argv);
    ex_seed_set = seed_opt->count() > 0;

    if (gen_graph->parsed()) {
      const double p = gg_p < 0.0 ? std::log(static_cast<double>(gg_n)) / gg_n : gg_p;
      return cmd_gen_graph(gg_kind, gg_n, p, gg_gamma, gg_seed, gg_out);
    }
    if (gen_signals->parsed()) {
      return cmd_gen_signals(gs_graph, gs_filter, gs_m, gs_noise, gs_seed, gs_out);
    }
    if (estimate->parsed()) {
      return cmd_estimate(es_batch, es_cov, es_tol, es_maxiter, es_out, es_savecov);
    }
    if (rank->parsed()) {
      return cmd_rank(rk_batch, rk_cov, 0.0, rk_tol, rk_maxiter, rk_out);
    }
    if (trank->parsed()) {
      if (!(tr_tau > 0.0)) throw ConfigError("--tau must be positive");
      return cmd_rank(tr_batch, tr_cov, tr_tau, tr_tol, tr_maxiter, tr_out);
    }
    if (experiment->parsed()) {
      ExperimentConfig cfg = ex_config.empty()
                                 ? ExperimentConfig{}
                                 : ExperimentConfig::from_json_file(ex_config);
      cfg.experiment = ex_which;
      if (!ex_outdir.empty()) cfg.output_dir = ex_outdir;
      if (ex_n > 0) cfg.n = ex_n;
      if (ex_p > -1.5) cfg.p = ex_p;
      if (!ex_gammas.empty()) cfg.gammas = ex_gammas;
      if (!ex_m.empty()) cfg.m_values = ex_m;
      if (ex_trials > 0) cfg.trials = ex_trials;
      if (!ex_filter.empty()) {
        cfg.filter_json = ex_filter.front() == '{' ? ex_filter
                                                   : read_text_file(ex_filter);
      }
      if (!ex_votes.empty()) cfg.votes_path = ex_votes;
      if (!ex_nominate.empty()) cfg.nominate_path = ex_nominate;
      if (ex_seed_set) cfg.seed = ex_seed;
      if (ex_large_m) cfg.allow_large_m = true;
      cfg.output_dir = resolve_output(cfg.output_dir);
      if (cfg.experiment == "er") {
        run_experiment_er(cfg);
      } else if (cfg.experiment == "crgm") {
        run_experiment_crgm(cfg);
      } else {
        run_experiment_senate(cfg);
      }
      std::cout << "experiment outputs in " << cfg.output_dir << "\n";
      return 0;
    }
    if (ingest->parsed()) {
      return cmd_ingest_votes(iv_input, iv_congress, iv_chamber, iv_party,
                              iv_validate, iv_out);
    }
    if (metrics->parsed()) {
      return cmd_metrics(mt_truth, mt_est, mt_x, mt_y, mt_out);
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
