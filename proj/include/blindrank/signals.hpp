#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "blindrank/filters.hpp"
#include "blindrank/graph.hpp"

namespace blindrank {

enum class NoiseKind { gaussian, rademacher };

NoiseKind noise_kind_from_string(const std::string& s);
std::string to_string(NoiseKind k);

/// Batch of m filtered observations, one per row. Row l depends only on
/// (seed, l), so any partitioning of rows across workers reproduces the
/// same batch.
struct SignalBatch {
  Eigen::MatrixXd samples;  // m x n
  int m = 0;
  NoiseKind noise_kind = NoiseKind::gaussian;
  std::uint64_t seed = 0;
  std::string filter_id;
  // Norm bound sqrt(n)*||H(A)||_2; exact for rademacher noise, a
  // subgaussian proxy for gaussian.
  double bound_r = 0.0;
};

struct SampleCovariance {
  Eigen::MatrixXd matrix;  // n x n
  int m = 0;
};

/// m x n matrix of zero-mean unit-covariance noise rows.
Eigen::MatrixXd draw_noise(int n, int m, NoiseKind kind, std::uint64_t seed);

SignalBatch synthesize_batch(const GraphFilter& f, const Graph& g, int m,
                             NoiseKind kind, std::uint64_t seed);

/// Same as synthesize_batch but with caller-supplied noise rows.
SignalBatch filter_noise_batch(const FilterOperator& op,
                               const Eigen::MatrixXd& noise,
                               NoiseKind kind, std::uint64_t seed);

/// (1/m) * sum of y y^T over rows; the model is zero-mean by construction,
/// so no mean is subtracted. Chunks of rows accumulate in extended
/// precision so that large m does not drift.
SampleCovariance sample_covariance(const SignalBatch& b);
Eigen::MatrixXd sample_covariance_matrix(const Eigen::MatrixXd& samples);

/// Sample covariance of a synthesized batch without materializing it;
/// bitwise-identical to sample_covariance(synthesize_batch(...)).
SampleCovariance streamed_covariance(const FilterOperator& op, int n, int m,
                                     NoiseKind kind, std::uint64_t seed);

}  // namespace blindrank
