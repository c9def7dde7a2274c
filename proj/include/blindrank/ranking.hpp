#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "blindrank/graph.hpp"
#include "blindrank/signals.hpp"
#include "blindrank/spectral.hpp"

namespace blindrank {

/// Relation of the unordered pair {i, j} with i < j.
enum class PairRelation : std::uint8_t { i_above, j_above, tied, abstain };

enum class OrderKind { weak, partial };

std::string to_string(PairRelation r);
PairRelation pair_relation_from_string(const std::string& s);

/// Weak or partial order over node indices stored as one relation per
/// unordered pair. Weak orders never abstain.
class NodeOrdering {
 public:
  /// i above j iff v_i > v_j + tie_tol; within tie_tol is a tie.
  static NodeOrdering weak_from_vector(const Eigen::VectorXd& v,
                                       double tie_tol,
                                       std::string source = {});

  /// Abstains on pairs with |v_i - v_j| <= tau, orders the rest strictly.
  static NodeOrdering partial_from_vector(const Eigen::VectorXd& v, double tau,
                                          std::string source = {});

  /// Used by deserialization; validates counts and the weak/abstain rule.
  static NodeOrdering from_relations(int n, OrderKind kind, double tau,
                                     std::vector<PairRelation> relations,
                                     std::string source = {});

  int n() const { return n_; }
  OrderKind kind() const { return kind_; }
  double tau() const { return tau_; }
  const std::string& source() const { return source_; }
  const std::vector<PairRelation>& relations() const { return relations_; }

  /// Relation for any i != j; mirrored so that i_above always refers to
  /// the first argument.
  PairRelation relation(int i, int j) const;

  std::size_t pair_count() const { return relations_.size(); }
  int count(PairRelation r) const;

  /// Exhaustive transitivity check of the strict relation over triples
  /// whose three pairs are all strictly ordered.
  bool strict_relation_is_transitive() const;

 private:
  NodeOrdering(int n, OrderKind kind, double tau, std::string source)
      : n_(n), kind_(kind), tau_(tau), source_(std::move(source)) {}
  static std::size_t pair_index(int n, int i, int j);

  int n_;
  OrderKind kind_;
  double tau_;
  std::string source_;
  std::vector<PairRelation> relations_;
};

/// Pairwise agreement between an estimated ordering and a ground-truth
/// weak ordering. `tied_pairs` counts pairs the estimate tied while the
/// truth ordered strictly; truth-tied pairs met by estimate abstention
/// count as abstained, not concordant.
struct ConcordanceReport {
  long concordant = 0;
  long discordant = 0;
  long abstained = 0;
  long tied_pairs = 0;
  double completeness = 0.0;
};

ConcordanceReport concordance(const NodeOrdering& truth,
                              const NodeOrdering& est);

/// Largest estimated gap u_hat_j - u_hat_i over pairs the estimate orders
/// against the truth (u_j <= u_i); 0 when fully concordant. Any threshold
/// at or above the returned value abstains from every such pair.
double min_viable_threshold(const Eigen::VectorXd& u_true,
                            const Eigen::VectorXd& u_hat);

/// Ground-truth weak ordering with a relative tie tolerance, so that
/// isomorphic nodes whose exact centralities agree only up to solver
/// noise are treated as tied.
NodeOrdering truth_ordering(const CentralityVector& u,
                            double rel_tie_tol = 1e-9);

struct RankResult {
  CentralityEstimate estimate;
  NodeOrdering ordering;
};

/// Sample covariance -> leading eigenvector -> sign correction -> weak
/// ordering with exact-equality ties.
RankResult rank_simple(const SignalBatch& b, double tol = 1e-10,
                       int max_iter = -1);

/// Same pipeline from an explicit covariance matrix (`m = 0` marks a
/// population-covariance bypass).
RankResult rank_from_covariance(const Eigen::MatrixXd& covariance, int m,
                                double tol = 1e-10, int max_iter = -1);

/// Thresholded variant: abstains on pairs with |u_hat_i - u_hat_j| <= tau.
RankResult rank_threshold(const SignalBatch& b, double tau, double tol = 1e-10,
                          int max_iter = -1);
RankResult rank_threshold_from_covariance(const Eigen::MatrixXd& covariance,
                                          int m, double tau,
                                          double tol = 1e-10,
                                          int max_iter = -1);

}  // namespace blindrank
