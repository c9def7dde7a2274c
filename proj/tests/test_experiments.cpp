#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "blindrank/analysis.hpp"
#include "blindrank/errors.hpp"
#include "blindrank/experiments.hpp"
#include "blindrank/io.hpp"

using namespace blindrank;

namespace {

std::string fixture_dir() {
#ifdef BLINDRANK_DATA_DIR
  return BLINDRANK_DATA_DIR;
#else
  return "data";
#endif
}

std::string scratch(const std::string& leaf) {
  const auto dir = std::filesystem::temp_directory_path() / "blindrank_exp_tests";
  std::filesystem::create_directories(dir);
  return (dir / leaf).string();
}

bool same_bytes(const std::string& a, const std::string& b) {
  return read_text_file(a) == read_text_file(b);
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.m_values = {100, 100};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.m_values = {100, 50};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.m_values = {100, 100000};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);  // needs allow_large_m
  cfg.allow_large_m = true;
  CHECK_NOTHROW(cfg.validate());
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.trials = 1;
  cfg.experiment = "banana";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("config json round trip") {
  ExperimentConfig cfg;
  cfg.experiment = "crgm";
  cfg.n = 77;
  cfg.gammas = {0.4};
  cfg.m_values = {10, 20};
  cfg.seed = 99;
  const ExperimentConfig back = ExperimentConfig::from_json_text(cfg.to_json_text());
  CHECK(back.experiment == "crgm");
  CHECK(back.n == 77);
  CHECK(back.gammas == std::vector<double>{0.4});
  CHECK(back.m_values == std::vector<long>{10, 20});
  CHECK(back.seed == 99);
  CHECK_THROWS_AS(ExperimentConfig::from_json_text("{oops"), ConfigError);
}

TEST_CASE("er smoke run emits schema-valid tables") {
  ExperimentConfig cfg;
  cfg.experiment = "er";
  cfg.n = 40;
  cfg.trials = 1;
  cfg.m_values = {100};
  cfg.seed = 5;
  cfg.output_dir = scratch("er_smoke");
  const ErExperimentResult r = run_experiment_er(cfg);
  CHECK(r.mean_min_viable.size() == 1);
  CHECK_FALSE(r.has_threshold_fit);  // a single m cannot anchor the curve
  for (const char* f :
       {"error_rates.csv", "min_viable.csv", "threshold_fit.csv",
        "summary.json", "manifest.json", "error_rates.csv.schema.json",
        "min_viable.csv.schema.json"}) {
    CHECK(std::filesystem::exists(std::filesystem::path(cfg.output_dir) / f));
  }
}

TEST_CASE("er runs reproduce byte-identical outputs from one seed") {
  ExperimentConfig cfg;
  cfg.experiment = "er";
  cfg.n = 40;
  cfg.trials = 4;
  cfg.m_values = {100, 300};
  cfg.seed = 11;
  cfg.output_dir = scratch("er_a");
  run_experiment_er(cfg);
  ExperimentConfig cfg2 = cfg;
  cfg2.output_dir = scratch("er_b");
  run_experiment_er(cfg2);
  for (const char* f : {"error_rates.csv", "min_viable.csv", "threshold_fit.csv"}) {
    CHECK(same_bytes(scratch("er_a") + "/" + f, scratch("er_b") + "/" + f));
  }
  // Different seed, different numbers.
  ExperimentConfig cfg3 = cfg;
  cfg3.seed = 12;
  cfg3.output_dir = scratch("er_c");
  run_experiment_er(cfg3);
  CHECK_FALSE(same_bytes(scratch("er_a") + "/min_viable.csv",
                         scratch("er_c") + "/min_viable.csv"));
}

TEST_CASE("er error cells feed the regression") {
  ExperimentConfig cfg;
  cfg.experiment = "er";
  cfg.n = 50;
  cfg.trials = 8;
  cfg.m_values = {100, 400};
  cfg.seed = 21;
  cfg.output_dir = scratch("er_fit");
  const ErExperimentResult r = run_experiment_er(cfg);
  CHECK(r.has_threshold_fit);
  CHECK(r.threshold_fit.c > 0.0);
  CHECK_FALSE(r.error_cells.empty());
}

TEST_CASE("crgm pure-model prediction column matches the closed form") {
  ExperimentConfig cfg;
  cfg.experiment = "crgm";
  cfg.n = 60;
  cfg.gammas = {1.0};
  cfg.trials = 2;
  cfg.centrality_draws = 3;
  cfg.pairwise_m = 100;
  cfg.m_values = {100, 200};
  cfg.seed = 31;
  cfg.output_dir = scratch("crgm_pure");
  const CrgmExperimentResult r = run_experiment_crgm(cfg);
  REQUIRE(r.per_gamma.size() == 1);
  CHECK(r.per_gamma[0].gamma == 1.0);

  const CrgmModel model = crgm_predicted_centrality(60, 1.0);
  const std::string csv =
      read_text_file(scratch("crgm_pure") + "/centrality_mean.csv");
  // First data row is node 1; its predicted column is the model's entry.
  const auto line_start = csv.find('\n') + 1;
  const auto line = csv.substr(line_start, csv.find('\n', line_start) - line_start);
  const auto last_comma = line.rfind(',');
  CHECK(line.substr(last_comma + 1) == format_value(model.predicted.values(0)));

  for (const char* f : {"centrality_mean.csv", "pairwise_success.csv",
                        "difficulty.csv", "threshold_curves.csv",
                        "summary.json", "manifest.json"}) {
    CHECK(std::filesystem::exists(std::filesystem::path(cfg.output_dir) / f));
  }
}

TEST_CASE("er error rates do not rise with the sample size") {
  ExperimentConfig cfg;
  cfg.experiment = "er";
  cfg.n = 60;
  cfg.trials = 60;
  cfg.m_values = {100, 400, 1600};
  cfg.seed = 71;
  cfg.output_dir = scratch("er_mono");
  const ErExperimentResult r = run_experiment_er(cfg);

  // One-sided two-proportion z-test per node and consecutive m pair; the
  // count of 5%-level exceedances must stay within the binomial noise the
  // level itself implies.
  std::map<std::pair<int, long>, double> rate;
  for (const ErrorRateCell& c : r.error_cells) rate[{c.node, c.m}] = c.rate;
  int tests = 0, flags = 0;
  const double t = static_cast<double>(cfg.trials);
  for (const ErrorRateCell& c : r.error_cells) {
    for (std::size_t k = 0; k + 1 < cfg.m_values.size(); ++k) {
      if (c.m != cfg.m_values[k]) continue;
      const auto next = rate.find({c.node, cfg.m_values[k + 1]});
      if (next == rate.end()) continue;
      ++tests;
      const double p1 = c.rate, p2 = next->second;
      const double pooled = (p1 + p2) / 2.0;
      if (pooled == 0.0 || pooled == 1.0) continue;
      const double z =
          (p2 - p1) / std::sqrt(pooled * (1.0 - pooled) * (2.0 / t));
      if (z > 1.6449) ++flags;  // one-sided 5%
    }
  }
  REQUIRE(tests > 50);
  const double expect = 0.05 * tests;
  CHECK(flags <= expect + 3.0 * std::sqrt(expect * 0.95) + 1.0);
}

TEST_CASE("crgm completeness is higher for the sharper mixture") {
  ExperimentConfig cfg;
  cfg.experiment = "crgm";
  cfg.n = 120;
  cfg.gammas = {0.2, 0.8};
  cfg.trials = 10;
  cfg.centrality_draws = 4;
  cfg.pairwise_m = 200;
  cfg.m_values = {500, 2000};
  cfg.seed = 81;
  cfg.output_dir = scratch("crgm_compl");
  const CrgmExperimentResult r = run_experiment_crgm(cfg);
  REQUIRE(r.per_gamma.size() == 2);
  for (std::size_t k = 0; k < r.m_values.size(); ++k) {
    CHECK(r.per_gamma[1].mean_completeness[k] >
          r.per_gamma[0].mean_completeness[k]);
  }
}

TEST_CASE("senate fixture pipeline is deterministic and complete") {
  ExperimentConfig cfg;
  cfg.experiment = "senate";
  cfg.votes_path = fixture_dir() + "/senate_fixture.csv";
  cfg.nominate_path = fixture_dir() + "/senate_fixture_nominate.csv";
  cfg.output_dir = scratch("senate_a");
  const SenateExperimentResult r = run_experiment_senate(cfg);
  CHECK(r.n == 6);
  CHECK(r.m == 12);
  CHECK(r.have_coordinates);
  CHECK(r.half_full_cosine > 0.8);
  CHECK(std::abs(r.dim1.rho) <= 1.0);

  ExperimentConfig cfg2 = cfg;
  cfg2.output_dir = scratch("senate_b");
  run_experiment_senate(cfg2);
  for (const char* f : {"estimates.csv", "threshold_sweep.csv", "summary.json"}) {
    CHECK(same_bytes(scratch("senate_a") + "/" + f, scratch("senate_b") + "/" + f));
  }
}

TEST_CASE("senate sweep counts fall as the threshold grows") {
  ExperimentConfig cfg;
  cfg.experiment = "senate";
  cfg.votes_path = fixture_dir() + "/senate_fixture.csv";
  cfg.nominate_path = fixture_dir() + "/senate_fixture_nominate.csv";
  cfg.output_dir = scratch("senate_sweep");
  run_experiment_senate(cfg);
  const std::string csv = read_text_file(cfg.output_dir + "/threshold_sweep.csv");
  std::map<int, std::vector<std::pair<long, long>>> by_dim;  // (conc, disc)
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> f;
    while (std::getline(row, field, ',')) f.push_back(field);
    by_dim[std::stoi(f[0])].push_back({std::stol(f[2]), std::stol(f[3])});
  }
  REQUIRE(by_dim.size() == 2);
  for (const auto& [dim, counts] : by_dim) {
    for (std::size_t k = 0; k + 1 < counts.size(); ++k) {
      CHECK(counts[k + 1].first <= counts[k].first);
      CHECK(counts[k + 1].second <= counts[k].second);
    }
  }
}

TEST_CASE("senate without coordinates skips correlations") {
  ExperimentConfig cfg;
  cfg.experiment = "senate";
  cfg.votes_path = fixture_dir() + "/senate_fixture.csv";
  cfg.output_dir = scratch("senate_nocoords");
  const SenateExperimentResult r = run_experiment_senate(cfg);
  CHECK_FALSE(r.have_coordinates);
  CHECK_FALSE(std::filesystem::exists(
      std::filesystem::path(cfg.output_dir) / "threshold_sweep.csv"));
  const std::string summary = read_text_file(cfg.output_dir + "/summary.json");
  CHECK(summary.find("spearman_skipped") != std::string::npos);
}

TEST_CASE("senate requires a votes file") {
  ExperimentConfig cfg;
  cfg.experiment = "senate";
  CHECK_THROWS_AS(run_experiment_senate(cfg), ConfigError);
}
