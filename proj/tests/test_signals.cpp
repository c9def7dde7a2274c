#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "blindrank/errors.hpp"
#include "blindrank/signals.hpp"
#include "test_helpers.hpp"

using namespace blindrank;

namespace {

Graph connected_er(int n, double p, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    Graph g = gen_erdos_renyi(n, p, s);
    if (is_connected(g)) return g;
  }
}

}  // namespace

TEST_CASE("gaussian noise has the right first two moments") {
  const int n = 3, m = 100000;
  const Eigen::MatrixXd w = draw_noise(n, m, NoiseKind::gaussian, 31);
  const double bound_mean = 4.0 / std::sqrt(static_cast<double>(m));
  for (int j = 0; j < n; ++j) {
    CHECK(std::abs(w.col(j).mean()) < bound_mean);
  }
  const Eigen::MatrixXd cov = w.transpose() * w / static_cast<double>(m);
  const double dev = testing::sym_operator_norm(cov - Eigen::MatrixXd::Identity(n, n));
  CHECK(dev < 5.0 / std::sqrt(static_cast<double>(m)));
}

TEST_CASE("rademacher noise has +/-1 support") {
  const Eigen::MatrixXd w = draw_noise(2, 4, NoiseKind::rademacher, 5);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 2; ++c) {
      CHECK(std::abs(w(r, c)) == 1.0);
    }
  }
}

TEST_CASE("noise is deterministic by seed and independent of batch splits") {
  const Eigen::MatrixXd a = draw_noise(4, 50, NoiseKind::gaussian, 77);
  const Eigen::MatrixXd b = draw_noise(4, 50, NoiseKind::gaussian, 77);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  // Row l depends only on (seed, l): a longer batch starts identically.
  const Eigen::MatrixXd c = draw_noise(4, 80, NoiseKind::gaussian, 77);
  CHECK((c.topRows(50) - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(noise_kind_from_string("uniform"), ConfigError);
}

TEST_CASE("identity filter batches equal the raw noise") {
  const Graph g = gen_named("cycle", 7);
  const SignalBatch b =
      synthesize_batch(GraphFilter::polynomial({1.0}), g, 20, NoiseKind::gaussian, 9);
  const Eigen::MatrixXd w = draw_noise(7, 20, NoiseKind::gaussian, 9);
  CHECK((b.samples - w).cwiseAbs().maxCoeff() == 0.0);
  CHECK(b.filter_id == "poly:[1]");
  CHECK(b.bound_r == doctest::Approx(std::sqrt(7.0)).epsilon(1e-12));
}

TEST_CASE("forced noise row passes through the adjacency filter") {
  const Graph p3 = gen_named("path", 3);
  const FilterOperator op =
      build_filter_operator(GraphFilter::polynomial({0.0, 1.0}), p3);
  Eigen::MatrixXd w(1, 3);
  w << 1, 0, 0;
  const SignalBatch b = filter_noise_batch(op, w, NoiseKind::gaussian, 0);
  CHECK(b.samples(0, 0) == 0.0);
  CHECK(b.samples(0, 1) == 1.0);
  CHECK(b.samples(0, 2) == 0.0);
}

TEST_CASE("sample covariance outer products") {
  Eigen::MatrixXd one(1, 2);
  one << 1, 2;
  const Eigen::MatrixXd c1 = sample_covariance_matrix(one);
  Eigen::MatrixXd expected(2, 2);
  expected << 1, 2, 2, 4;
  CHECK((c1 - expected).cwiseAbs().maxCoeff() == 0.0);

  // Identical rows up to sign all contribute the same outer product.
  Eigen::MatrixXd pm(4, 2);
  pm << 1, 2, -1, -2, 1, 2, -1, -2;
  CHECK((sample_covariance_matrix(pm) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("identity-filter covariance concentrates around the identity") {
  const Graph g = gen_named("complete", 10);
  const FilterOperator op = build_filter_operator(GraphFilter::polynomial({1.0}), g);
  const SampleCovariance c =
      streamed_covariance(op, 10, 100000, NoiseKind::gaussian, 202);
  const double dev =
      testing::sym_operator_norm(c.matrix - Eigen::MatrixXd::Identity(10, 10));
  CHECK(dev < 0.05);
}

TEST_CASE("sample covariance approaches the population covariance") {
  const Graph g = connected_er(100, std::log(100.0) / 100.0, 1234);
  const GraphFilter f = GraphFilter::spectral("sqrt_abs");
  const PopulationCovariance pop = population_covariance(f, g);
  const FilterOperator op = build_filter_operator(f, g);
  const SampleCovariance c =
      streamed_covariance(op, 100, 100000, NoiseKind::gaussian, 55);
  const double err = testing::sym_operator_norm(c.matrix - pop.matrix);
  CHECK(err < 0.05 * testing::sym_operator_norm(pop.matrix));
}

TEST_CASE("covariance error decays like an inverse square root") {
  const Graph g = connected_er(30, 0.15, 808);
  const GraphFilter f = GraphFilter::spectral("sqrt_abs");
  const PopulationCovariance pop = population_covariance(f, g);
  const FilterOperator op = build_filter_operator(f, g);
  const std::vector<long> ms = {100, 1000, 10000, 100000};
  const int trials = 5;
  std::vector<double> medians;
  for (long m : ms) {
    std::vector<double> errs;
    for (int t = 0; t < trials; ++t) {
      const SampleCovariance c = streamed_covariance(
          op, 30, static_cast<int>(m), NoiseKind::gaussian,
          mix_seed(3000, static_cast<std::uint64_t>(m) * 10 + t));
      errs.push_back(testing::sym_operator_norm(c.matrix - pop.matrix));
    }
    std::sort(errs.begin(), errs.end());
    medians.push_back(errs[trials / 2]);
  }
  // Log-log regression slope of the medians against m.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < ms.size(); ++k) {
    const double x = std::log(static_cast<double>(ms[k]));
    const double y = std::log(medians[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nk = static_cast<double>(ms.size());
  const double slope = (nk * sxy - sx * sy) / (nk * sxx - sx * sx);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.2));  // -0.5 +/- 0.1
}

TEST_CASE("covariance is scale equivariant") {
  const Graph g = gen_named("cycle", 6);
  SignalBatch b = synthesize_batch(GraphFilter::polynomial({0.5, 1.0}), g, 200,
                                   NoiseKind::gaussian, 12);
  const Eigen::MatrixXd base = sample_covariance(b).matrix;
  b.samples *= 3.0;
  const Eigen::MatrixXd scaled = sample_covariance(b).matrix;
  CHECK((scaled - 9.0 * base).cwiseAbs().maxCoeff() <
        1e-12 * base.cwiseAbs().maxCoeff() * 9.0);
}

TEST_CASE("streamed covariance is bitwise identical to the materialized path") {
  const Graph g = connected_er(7, 0.5, 66);
  const GraphFilter f = GraphFilter::polynomial({0.3, 1.0, 0.2});
  const FilterOperator op = build_filter_operator(f, g);
  const int m = 10000;  // spans multiple accumulation chunks
  const SignalBatch b = synthesize_batch(f, g, m, NoiseKind::gaussian, 99);
  const SampleCovariance materialized = sample_covariance(b);
  const SampleCovariance streamed =
      streamed_covariance(op, 7, m, NoiseKind::gaussian, 99);
  CHECK((materialized.matrix - streamed.matrix).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("rademacher batches carry an exact norm bound") {
  const Graph g = gen_named("star", 6);
  const SignalBatch b = synthesize_batch(GraphFilter::polynomial({0.0, 1.0}), g,
                                         500, NoiseKind::rademacher, 3);
  for (int r = 0; r < b.m; ++r) {
    CHECK(b.samples.row(r).norm() <= b.bound_r + 1e-9);
  }
}

TEST_CASE("batch synthesis rejects invalid sample counts") {
  const Graph g = gen_named("path", 4);
  CHECK_THROWS_AS(synthesize_batch(GraphFilter::polynomial({1.0}), g, 0,
                                   NoiseKind::gaussian, 1),
                  ConfigError);
}
