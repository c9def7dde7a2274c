#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

namespace blindrank {

/// Undirected graph held as a dense symmetric adjacency matrix.
/// Immutable after construction; generator-produced graphs are simple
/// (0/1 weights, zero diagonal).
class Graph {
 public:
  /// Validates symmetry and non-negativity of `adjacency`.
  static Graph from_adjacency(Eigen::MatrixXd adjacency);

  int n() const { return static_cast<int>(adjacency_.rows()); }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }

 private:
  explicit Graph(Eigen::MatrixXd a) : adjacency_(std::move(a)) {}
  Eigen::MatrixXd adjacency_;
};

/// Full eigendecomposition of an adjacency matrix, eigenvalues sorted
/// non-increasing, eigenvector columns orthonormal and paired by index.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

/// Unit-norm, entrywise non-negative centrality values.
struct CentralityVector {
  Eigen::VectorXd values;

  /// Validates unit norm (1e-12) and non-negativity (-1e-12 slack).
  static CentralityVector checked(Eigen::VectorXd v);
};

Graph gen_erdos_renyi(int n, double p, std::uint64_t seed);

/// Mixed circular random graph model: edge {i,j} (1-based indices) present
/// with probability gamma*((i/n)^2+(j/n)^2)/2 + (1-gamma). Self-loops are
/// excluded.
Graph gen_mixed_crgm(int n, double gamma, std::uint64_t seed);

/// Edge probability used by gen_mixed_crgm for 1-based node indices i, j.
double crgm_edge_probability(int n, double gamma, int i, int j);

Graph gen_named(const std::string& kind, int n);

bool is_connected(const Graph& g);

Spectrum full_spectrum(const Graph& g);

/// Positive-signed unit leading eigenvector of the adjacency matrix.
/// Requires a connected graph with a simple leading eigenvalue.
CentralityVector exact_centrality(const Graph& g);

}  // namespace blindrank
