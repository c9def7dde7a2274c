#include "blindrank/ranking.hpp"

#include <cmath>

#include "blindrank/errors.hpp"

namespace blindrank {

std::string to_string(PairRelation r) {
  switch (r) {
    case PairRelation::i_above: return "i_above";
    case PairRelation::j_above: return "j_above";
    case PairRelation::tied: return "tied";
    case PairRelation::abstain: return "abstain";
  }
  throw ConfigError("invalid pair relation");
}

PairRelation pair_relation_from_string(const std::string& s) {
  if (s == "i_above") return PairRelation::i_above;
  if (s == "j_above") return PairRelation::j_above;
  if (s == "tied") return PairRelation::tied;
  if (s == "abstain") return PairRelation::abstain;
  throw DataError("unknown pair relation: " + s);
}

std::size_t NodeOrdering::pair_index(int n, int i, int j) {
  // Upper triangle, row-major: (0,1),(0,2),...,(0,n-1),(1,2),...
  return static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

NodeOrdering NodeOrdering::weak_from_vector(const Eigen::VectorXd& v,
                                            double tie_tol,
                                            std::string source) {
  if (!v.allFinite()) throw DataError("ordering vector has non-finite entries");
  if (tie_tol < 0.0) throw ConfigError("tie tolerance must be non-negative");
  const int n = static_cast<int>(v.size());
  NodeOrdering o(n, OrderKind::weak, 0.0, std::move(source));
  o.relations_.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (v(i) > v(j) + tie_tol) {
        o.relations_.push_back(PairRelation::i_above);
      } else if (v(j) > v(i) + tie_tol) {
        o.relations_.push_back(PairRelation::j_above);
      } else {
        o.relations_.push_back(PairRelation::tied);
      }
    }
  }
  return o;
}

NodeOrdering NodeOrdering::partial_from_vector(const Eigen::VectorXd& v,
                                               double tau,
                                               std::string source) {
  if (!v.allFinite()) throw DataError("ordering vector has non-finite entries");
  if (tau < 0.0) throw ConfigError("threshold must be non-negative");
  const int n = static_cast<int>(v.size());
  NodeOrdering o(n, OrderKind::partial, tau, std::move(source));
  o.relations_.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = v(i) - v(j);
      if (std::abs(d) <= tau) {
        o.relations_.push_back(PairRelation::abstain);
      } else if (d > 0.0) {
        o.relations_.push_back(PairRelation::i_above);
      } else {
        o.relations_.push_back(PairRelation::j_above);
      }
    }
  }
  return o;
}

NodeOrdering NodeOrdering::from_relations(int n, OrderKind kind, double tau,
                                          std::vector<PairRelation> relations,
                                          std::string source) {
  if (n < 1) throw DataError("ordering needs at least one node");
  const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (relations.size() != expected) {
    throw DataError("relation count does not match node count");
  }
  for (PairRelation r : relations) {
    if (kind == OrderKind::weak && r == PairRelation::abstain) {
      throw DataError("weak orderings cannot abstain");
    }
  }
  NodeOrdering o(n, kind, tau, std::move(source));
  o.relations_ = std::move(relations);
  return o;
}

PairRelation NodeOrdering::relation(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
    throw ConfigError("pair indices out of range");
  }
  if (i < j) return relations_[pair_index(n_, i, j)];
  const PairRelation mirrored = relations_[pair_index(n_, j, i)];
  if (mirrored == PairRelation::i_above) return PairRelation::j_above;
  if (mirrored == PairRelation::j_above) return PairRelation::i_above;
  return mirrored;
}

int NodeOrdering::count(PairRelation r) const {
  int c = 0;
  for (PairRelation x : relations_) c += (x == r);
  return c;
}

bool NodeOrdering::strict_relation_is_transitive() const {
  // above(i,j): i strictly above j.
  auto above = [this](int i, int j) {
    return relation(i, j) == PairRelation::i_above;
  };
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      if (b == a || !above(a, b)) continue;
      for (int c = 0; c < n_; ++c) {
        if (c == a || c == b || !above(b, c)) continue;
        if (!above(a, c)) return false;
      }
    }
  }
  return true;
}

ConcordanceReport concordance(const NodeOrdering& truth,
                              const NodeOrdering& est) {
  if (truth.n() != est.n()) throw DataError("ordering sizes differ");
  if (truth.kind() != OrderKind::weak) {
    throw DataError("ground truth must be a weak ordering");
  }
  ConcordanceReport rep;
  const int n = truth.n();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const PairRelation t = truth.relation(i, j);
      const PairRelation e = est.relation(i, j);
      if (e == PairRelation::abstain) {
        ++rep.abstained;
      } else if (t == PairRelation::tied) {
        if (e == PairRelation::tied) {
          ++rep.concordant;
        } else {
          ++rep.discordant;
        }
      } else if (e == PairRelation::tied) {
        ++rep.tied_pairs;
      } else if (e == t) {
        ++rep.concordant;
      } else {
        ++rep.discordant;
      }
    }
  }
  const double total = static_cast<double>(n) * (n - 1) / 2.0;
  rep.completeness = 1.0 - static_cast<double>(rep.abstained) / total;
  return rep;
}

double min_viable_threshold(const Eigen::VectorXd& u_true,
                            const Eigen::VectorXd& u_hat) {
  if (u_true.size() != u_hat.size()) throw DataError("vector lengths differ");
  const int n = static_cast<int>(u_true.size());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double est_gap = u_hat(j) - u_hat(i);
      if (est_gap > 0.0 && u_true(j) <= u_true(i)) {
        worst = std::max(worst, est_gap);
      }
    }
  }
  return worst;
}

NodeOrdering truth_ordering(const CentralityVector& u, double rel_tie_tol) {
  const double scale = u.values.cwiseAbs().maxCoeff();
  return NodeOrdering::weak_from_vector(u.values, rel_tie_tol * scale,
                                        "exact_centrality");
}

RankResult rank_from_covariance(const Eigen::MatrixXd& covariance, int m,
                                double tol, int max_iter) {
  CentralityEstimate est = estimate_from_matrix(covariance, m, tol, max_iter);
  NodeOrdering order =
      NodeOrdering::weak_from_vector(est.u_hat, 0.0, "estimate:m=" +
                                     std::to_string(m));
  return RankResult{std::move(est), std::move(order)};
}

RankResult rank_simple(const SignalBatch& b, double tol, int max_iter) {
  const SampleCovariance c = sample_covariance(b);
  CentralityEstimate est = estimate_centrality(c, tol, max_iter);
  NodeOrdering order = NodeOrdering::weak_from_vector(
      est.u_hat, 0.0, b.filter_id + ":m=" + std::to_string(b.m));
  return RankResult{std::move(est), std::move(order)};
}

RankResult rank_threshold_from_covariance(const Eigen::MatrixXd& covariance,
                                          int m, double tau, double tol,
                                          int max_iter) {
  if (!(tau > 0.0)) throw ConfigError("threshold tau must be positive");
  CentralityEstimate est = estimate_from_matrix(covariance, m, tol, max_iter);
  NodeOrdering order = NodeOrdering::partial_from_vector(
      est.u_hat, tau, "estimate:m=" + std::to_string(m));
  return RankResult{std::move(est), std::move(order)};
}

RankResult rank_threshold(const SignalBatch& b, double tau, double tol,
                          int max_iter) {
  if (!(tau > 0.0)) throw ConfigError("threshold tau must be positive");
  const SampleCovariance c = sample_covariance(b);
  CentralityEstimate est = estimate_centrality(c, tol, max_iter);
  NodeOrdering order = NodeOrdering::partial_from_vector(
      est.u_hat, tau, b.filter_id + ":m=" + std::to_string(b.m));
  return RankResult{std::move(est), std::move(order)};
}

}  // namespace blindrank
