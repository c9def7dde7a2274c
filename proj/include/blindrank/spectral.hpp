#pragma once

#include <Eigen/Dense>

#include "blindrank/signals.hpp"

namespace blindrank {

/// Top eigenpair of a symmetric PSD matrix plus the runner-up eigenvalue.
struct TopEigenpair {
  double lambda1 = 0.0;
  Eigen::VectorXd vector;  // unit norm
  double lambda2 = 0.0;    // from a single deflated iteration run
  int iterations = 0;
};

/// Power iteration with a Rayleigh-quotient residual test. `max_iter < 0`
/// selects the default cap 100*n + 1000. Throws NumericError on
/// non-convergence (message carries the final residual) and when the
/// eigengap is numerically zero.
TopEigenpair leading_eigenvector(const Eigen::MatrixXd& m, double tol = 1e-10,
                                 int max_iter = -1);

struct SignCorrected {
  Eigen::VectorXd vector;
  bool ambiguous = false;  // reference inner product was exactly zero
};

/// Flips v so that it has a non-negative inner product with the reference
/// direction (all-ones by default). An exactly orthogonal input is
/// returned unchanged with the ambiguity flag set.
SignCorrected sign_correct(const Eigen::VectorXd& v);
SignCorrected sign_correct(const Eigen::VectorXd& v,
                           const Eigen::VectorXd& reference);

struct AlignmentDiagnostics {
  double cos_theta = 0.0;
  double sin_theta = 0.0;
  double alpha = 0.0;         // signed inner product <u, u_hat>
  double epsilon_norm = 0.0;  // ||u_hat - alpha*u||
};

/// Decomposition u_hat = alpha*u + epsilon with epsilon orthogonal to u.
/// Both inputs must be unit vectors.
AlignmentDiagnostics alignment(const Eigen::VectorXd& u,
                               const Eigen::VectorXd& u_hat);

/// Whether |<u,u_hat>| > sqrt(1 - <u,reference>^2), the hypothesis under
/// which sign correction against `reference` is guaranteed to orient
/// u_hat positively with u.
bool sign_correction_guarantee(const Eigen::VectorXd& u,
                               const Eigen::VectorXd& u_hat,
                               const Eigen::VectorXd& reference);

/// Sign-corrected leading eigenvector of a covariance matrix together
/// with solver diagnostics. `m` records the samples behind the estimate
/// (0 for a population-covariance bypass).
struct CentralityEstimate {
  Eigen::VectorXd u_hat;
  double eigengap_hat = 0.0;
  int m = 0;
  int iterations = 0;
  bool sign_ambiguous = false;
};

CentralityEstimate estimate_centrality(const SampleCovariance& c,
                                       double tol = 1e-10, int max_iter = -1);
CentralityEstimate estimate_from_matrix(const Eigen::MatrixXd& covariance,
                                        int m, double tol = 1e-10,
                                        int max_iter = -1);

}  // namespace blindrank
