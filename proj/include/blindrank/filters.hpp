#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "blindrank/graph.hpp"

namespace blindrank {

/// Linear operator acting on graph signals, either a polynomial of the
/// adjacency matrix or a scalar response applied through its spectrum.
class GraphFilter {
 public:
  /// Polynomial filter with coefficients gamma_0..gamma_T, T <= 64.
  /// With `normalize_by_lambda1` the polynomial is evaluated in A/lambda_1.
  static GraphFilter polynomial(std::vector<double> coeffs,
                                bool normalize_by_lambda1 = false);

  /// Named spectral response from the closed registry:
  /// "sqrt_abs", "identity", or "heat:<t>" (response exp(t*lambda/lambda_1)).
  static GraphFilter spectral(const std::string& name);

  bool is_polynomial() const { return is_poly_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  bool normalized() const { return normalize_; }
  const std::string& spectral_name() const { return name_; }

  /// Scalar response H(lambda); `lambda1` is the graph's leading adjacency
  /// eigenvalue (used by normalized polynomials and the heat response).
  double response(double lambda, double lambda1) const;

  /// Provenance string recorded in batch metadata.
  std::string id() const;

  /// True when every polynomial coefficient is non-negative with at least
  /// one positive. Spectral filters are judged per graph instead (see
  /// is_constructive below).
  bool nonnegative_coefficients() const;

 private:
  GraphFilter() = default;
  bool is_poly_ = false;
  std::vector<double> coeffs_;
  bool normalize_ = false;
  std::string name_;
  double heat_t_ = 0.0;
};

/// Exact covariance of filtered unit white noise, [H(A)]^2, together with
/// its eigengap delta = lambda_1 - lambda_2.
struct PopulationCovariance {
  Eigen::MatrixXd matrix;
  double eigengap = 0.0;
  bool degenerate = false;  // eigengap below 1e-10 relative
};

/// Returns H(A) x. Polynomials are evaluated with repeated matrix-vector
/// products; spectral responses go through the full eigendecomposition.
Eigen::VectorXd apply_filter(const GraphFilter& f, const Graph& g,
                             const Eigen::VectorXd& x);

PopulationCovariance population_covariance(const GraphFilter& f, const Graph& g);

/// True iff [H(A)]^2 has a simple leading eigenvalue whose eigenvector
/// aligns with exact_centrality(g). Used as a per-draw experiment guard.
bool leading_matches_centrality(const GraphFilter& f, const Graph& g);

/// Whether the filter aggregates constructively, so the covariance's top
/// eigenvector is the centrality direction. Polynomial filters: all
/// coefficients non-negative, at least one positive. Spectral filters:
/// response non-negative over the realized spectrum and uniquely
/// maximized in magnitude at lambda_1.
bool is_constructive(const GraphFilter& f, const Graph& g);

/// Dense n x n matrix H(A), plus data reused across trials.
struct FilterOperator {
  Eigen::MatrixXd matrix;
  double operator_norm = 0.0;  // max |H(lambda_l)|
  std::string filter_id;
};

FilterOperator build_filter_operator(const GraphFilter& f, const Graph& g);

}  // namespace blindrank
