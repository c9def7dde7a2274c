#include "blindrank/graph.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "blindrank/errors.hpp"
#include "blindrank/rng.hpp"

namespace blindrank {

namespace {

constexpr double kDegenerateGapRel = 1e-10;

Graph graph_from_upper_bernoulli(int n, Rng& rng,
                                 const std::function<double(int, int)>& prob) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(prob(i, j))) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
      }
    }
  }
  return Graph::from_adjacency(std::move(a));
}

}  // namespace

Graph Graph::from_adjacency(Eigen::MatrixXd adjacency) {
  if (adjacency.rows() != adjacency.cols() || adjacency.rows() < 1) {
    throw DataError("adjacency matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, adjacency.cwiseAbs().maxCoeff());
  if ((adjacency - adjacency.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DataError("adjacency matrix must be symmetric");
  }
  if (adjacency.minCoeff() < 0.0) {
    throw DataError("adjacency matrix must have non-negative entries");
  }
  return Graph(std::move(adjacency));
}

CentralityVector CentralityVector::checked(Eigen::VectorXd v) {
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    throw NumericError("centrality vector is not unit norm");
  }
  if (v.minCoeff() < -1e-12) {
    throw NumericError("centrality vector has negative entries");
  }
  return CentralityVector{std::move(v)};
}

Graph gen_erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 1) throw ConfigError("node count must be at least 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("edge probability must lie in [0,1]");
  Rng rng(mix_seed(seed, 0));
  return graph_from_upper_bernoulli(n, rng, [p](int, int) { return p; });
}

double crgm_edge_probability(int n, double gamma, int i, int j) {
  const double xi = static_cast<double>(i) / n;
  const double xj = static_cast<double>(j) / n;
  return gamma * (xi * xi + xj * xj) / 2.0 + (1.0 - gamma);
}

Graph gen_mixed_crgm(int n, double gamma, std::uint64_t seed) {
  if (n < 1) throw ConfigError("node count must be at least 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("mixture gamma must lie in [0,1]");
  Rng rng(mix_seed(seed, 0));
  // Internal storage is 0-based; the model's probability formula indexes
  // nodes 1..n, hence the +1 shift at the call.
  return graph_from_upper_bernoulli(n, rng, [n, gamma](int i, int j) {
    return crgm_edge_probability(n, gamma, i + 1, j + 1);
  });
}

Graph gen_named(const std::string& kind, int n) {
  if (n < 2) throw ConfigError("named graphs need at least 2 nodes");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  auto connect = [&a](int i, int j) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  };
  if (kind == "star") {
    for (int j = 1; j < n; ++j) connect(0, j);
  } else if (kind == "path") {
    for (int i = 0; i + 1 < n; ++i) connect(i, i + 1);
  } else if (kind == "cycle") {
    for (int i = 0; i + 1 < n; ++i) connect(i, i + 1);
    connect(n - 1, 0);
  } else if (kind == "complete") {
    a.setOnes();
    a.diagonal().setZero();
  } else {
    throw ConfigError("unknown graph kind: " + kind);
  }
  return Graph::from_adjacency(std::move(a));
}

bool is_connected(const Graph& g) {
  const int n = g.n();
  const Eigen::MatrixXd& a = g.adjacency();
  std::vector<char> seen(n, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  std::size_t head = 0;
  while (head < queue.size()) {
    const int i = queue[head++];
    for (int j = 0; j < n; ++j) {
      if (a(i, j) != 0.0 && !seen[j]) {
        seen[j] = 1;
        queue.push_back(j);
      }
    }
  }
  return queue.size() == static_cast<std::size_t>(n);
}

Spectrum full_spectrum(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g.adjacency());
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition failed");
  }
  // Eigen sorts ascending; flip to non-increasing.
  return Spectrum{solver.eigenvalues().reverse(),
                  solver.eigenvectors().rowwise().reverse()};
}

CentralityVector exact_centrality(const Graph& g) {
  if (!is_connected(g)) {
    throw DataError("graph is disconnected; leading eigenvector is not unique");
  }
  const Spectrum s = full_spectrum(g);
  const double l1 = s.eigenvalues(0);
  if (g.n() > 1) {
    const double gap = l1 - s.eigenvalues(1);
    if (gap < kDegenerateGapRel * std::max(1.0, l1)) {
      throw NumericError("leading adjacency eigenvalue is numerically degenerate");
    }
  }
  Eigen::VectorXd v = s.eigenvectors.col(0);
  if (v.sum() < 0.0) v = -v;
  v.normalize();
  return CentralityVector::checked(std::move(v));
}

}  // namespace blindrank
