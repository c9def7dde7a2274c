#pragma once

#include <Eigen/Dense>
#include <vector>

#include "blindrank/filters.hpp"
#include "blindrank/graph.hpp"

namespace blindrank {

/// Inputs for the pairwise sampling bound and the threshold viability
/// check. `bound_constant` stands in for the unpinned constant of the
/// covariance concentration rate (||C_y||_2 is the natural default).
struct SamplingBoundInputs {
  double bound_constant = 1.0;  // C
  double eigengap = 1.0;        // delta of the population covariance
  double eta = 0.5;             // failure probability in (0, 1]
  CentralityVector u;
};

/// Fills the bound inputs from a population covariance with the default
/// constant choice C = ||C_y||_2.
SamplingBoundInputs bound_inputs_from_population(const PopulationCovariance& c,
                                                 CentralityVector u,
                                                 double eta);

/// Right-hand side of the pairwise sampling requirement:
/// -log(eta) * (C/delta)^2 * max{ 2/(u_j-u_i)^2, 1/<u,1/sqrt(n)>^2 }.
/// Undefined (throws) when u_i == u_j.
double pairwise_sample_bound(const SamplingBoundInputs& in, int i, int j);

/// True iff (C/delta)*sqrt(-log(eta)/m) < min{ tau/sqrt(2), <u,1/sqrt(n)> },
/// the sufficient condition for tau to be viable with probability 1-eta.
bool threshold_viability_check(const SamplingBoundInputs& in, double tau, long m);

/// tau = C/sqrt(m).
double threshold_prescription(double c_fit, long m);

struct InverseSqrtFit {
  double c = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of values ~ C/sqrt(m) (no intercept) with R^2
/// against the mean of the values.
InverseSqrtFit fit_inverse_sqrt(const std::vector<long>& m_values,
                                const std::vector<double>& values);

/// Predicted centrality profile of the mixed circular model: the large-n
/// limit profile plus a beta/sqrt(n) offset controlled by the mixture.
struct CrgmModel {
  int n = 0;
  double gamma = 0.0;
  double beta = 0.0;
  CentralityVector predicted;
};

CrgmModel crgm_predicted_centrality(int n, double gamma);

/// One empirical error-rate observation for the log-linear model
/// log(rate) = C0 * m * (u_i - u_ref)^2 + C1.
struct ErrorRateCell {
  int node = 0;
  long m = 0;
  double rate = 0.0;
};

struct ErrorRateModelFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double r_squared = 0.0;
  int cells_used = 0;
};

/// Fits the model over cells with rate strictly inside (0,1); needs at
/// least 3 such cells.
ErrorRateModelFit fit_error_rate_model(const std::vector<ErrorRateCell>& rates,
                                       const CentralityVector& u, int ref_node);

/// The orthogonal unit-deficit perturbation minimizing eps_j - eps_i under
/// ||eps||^2 = 1 - alpha^2 and eps ⊥ u. Requires u_j > u_i.
Eigen::VectorXd worst_case_perturbation(const CentralityVector& u, int i,
                                        int j, double alpha);

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;
};

/// Rank correlation with average-rank tie handling; two-sided p-value via
/// the large-sample t approximation.
SpearmanResult spearman(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

}  // namespace blindrank
