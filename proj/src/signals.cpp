#include "blindrank/signals.hpp"

#include <algorithm>
#include <cmath>

#include "blindrank/errors.hpp"
#include "blindrank/rng.hpp"

namespace blindrank {

namespace {

// Shared by every covariance path so that streamed and materialized
// computations perform identical operations in identical order.
constexpr int kChunkRows = 4096;

void fill_noise_rows(Eigen::MatrixXd& w, int first_row, NoiseKind kind,
                     std::uint64_t seed) {
  const int rows = static_cast<int>(w.rows());
  const int n = static_cast<int>(w.cols());
  for (int r = 0; r < rows; ++r) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(first_row + r)));
    for (int j = 0; j < n; ++j) {
      w(r, j) = kind == NoiseKind::gaussian ? rng.gaussian() : rng.rademacher();
    }
  }
}

Eigen::MatrixXd finalize_covariance(const Eigen::Matrix<long double, Eigen::Dynamic,
                                                        Eigen::Dynamic>& acc,
                                    int m) {
  Eigen::MatrixXd c = (acc / static_cast<long double>(m)).cast<double>();
  return 0.5 * (c + c.transpose()).eval();
}

}  // namespace

NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "gaussian") return NoiseKind::gaussian;
  if (s == "rademacher") return NoiseKind::rademacher;
  throw ConfigError("unknown noise kind: " + s);
}

std::string to_string(NoiseKind k) {
  return k == NoiseKind::gaussian ? "gaussian" : "rademacher";
}

Eigen::MatrixXd draw_noise(int n, int m, NoiseKind kind, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ConfigError("noise dimensions must be positive");
  Eigen::MatrixXd w(m, n);
  fill_noise_rows(w, 0, kind, seed);
  return w;
}

SignalBatch synthesize_batch(const GraphFilter& f, const Graph& g, int m,
                             NoiseKind kind, std::uint64_t seed) {
  if (m < 1) throw ConfigError("sample count must be at least 1");
  const FilterOperator op = build_filter_operator(f, g);
  const int n = g.n();
  SignalBatch b;
  b.samples.resize(m, n);
  for (int row = 0; row < m; row += kChunkRows) {
    const int len = std::min(kChunkRows, m - row);
    Eigen::MatrixXd w(len, n);
    fill_noise_rows(w, row, kind, seed);
    b.samples.middleRows(row, len) = w * op.matrix;
  }
  b.m = m;
  b.noise_kind = kind;
  b.seed = seed;
  b.filter_id = op.filter_id;
  b.bound_r = std::sqrt(static_cast<double>(n)) * op.operator_norm;
  return b;
}

SignalBatch filter_noise_batch(const FilterOperator& op,
                               const Eigen::MatrixXd& noise,
                               NoiseKind kind, std::uint64_t seed) {
  if (noise.cols() != op.matrix.rows()) {
    throw DataError("noise width does not match filter dimension");
  }
  SignalBatch b;
  b.samples = noise * op.matrix;
  b.m = static_cast<int>(noise.rows());
  b.noise_kind = kind;
  b.seed = seed;
  b.filter_id = op.filter_id;
  b.bound_r = std::sqrt(static_cast<double>(noise.cols())) * op.operator_norm;
  return b;
}

Eigen::MatrixXd sample_covariance_matrix(const Eigen::MatrixXd& samples) {
  const int m = static_cast<int>(samples.rows());
  const int n = static_cast<int>(samples.cols());
  if (m < 1) throw ConfigError("sample covariance needs at least one row");
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> acc =
      Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int row = 0; row < m; row += kChunkRows) {
    const int len = std::min(kChunkRows, m - row);
    const Eigen::MatrixXd g =
        samples.middleRows(row, len).transpose() * samples.middleRows(row, len);
    acc += g.cast<long double>();
  }
  return finalize_covariance(acc, m);
}

SampleCovariance sample_covariance(const SignalBatch& b) {
  if (b.m != b.samples.rows()) {
    throw DataError("batch metadata m does not match sample rows");
  }
  return SampleCovariance{sample_covariance_matrix(b.samples), b.m};
}

SampleCovariance streamed_covariance(const FilterOperator& op, int n, int m,
                                     NoiseKind kind, std::uint64_t seed) {
  if (m < 1) throw ConfigError("sample count must be at least 1");
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> acc =
      Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int row = 0; row < m; row += kChunkRows) {
    const int len = std::min(kChunkRows, m - row);
    Eigen::MatrixXd w(len, n);
    fill_noise_rows(w, row, kind, seed);
    const Eigen::MatrixXd y = w * op.matrix;
    const Eigen::MatrixXd g = y.transpose() * y;
    acc += g.cast<long double>();
  }
  return SampleCovariance{finalize_covariance(acc, m), m};
}

}  // namespace blindrank
