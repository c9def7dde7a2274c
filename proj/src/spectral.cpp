#include "blindrank/spectral.hpp"

#include <cmath>
#include <string>

#include "blindrank/errors.hpp"
#include "blindrank/rng.hpp"

namespace blindrank {

namespace {

constexpr double kDegenerateGapRel = 1e-12;

// Fixed-seed pseudorandom start; a generic direction avoids starting
// orthogonal to the leading eigenvector on structured matrices.
Eigen::VectorXd start_vector(int n, std::uint64_t salt) {
  Rng rng(0x42A5C0FFEEULL ^ salt);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.symmetric_uniform();
  const double norm = v.norm();
  return v / norm;
}

struct IterationOutcome {
  double lambda = 0.0;
  Eigen::VectorXd vector;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

// `exclude`, when non-null, is kept projected out of the iterate so the
// deflated run cannot drift back toward the leading direction.
IterationOutcome power_iterate(const Eigen::MatrixXd& m, double tol,
                               int max_iter, std::uint64_t salt,
                               const Eigen::VectorXd* exclude) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd v = start_vector(n, salt);
  if (exclude) {
    v -= exclude->dot(v) * (*exclude);
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
  }
  IterationOutcome out;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd w = m * v;
    if (exclude) w -= exclude->dot(w) * (*exclude);
    const double lambda = v.dot(w);
    const double residual = (w - lambda * v).norm();
    out.lambda = lambda;
    out.vector = v;
    out.residual = residual;
    out.iterations = it + 1;
    if (residual <= tol * std::max(1.0, std::abs(lambda))) {
      out.converged = true;
      return out;
    }
    const double wnorm = w.norm();
    if (wnorm == 0.0) {
      // v lies in the null space; the matrix restricted to this direction
      // is zero, which the caller reports as a zero eigenvalue.
      out.lambda = 0.0;
      out.residual = 0.0;
      out.converged = true;
      return out;
    }
    v = w / wnorm;
  }
  return out;
}

}  // namespace

TopEigenpair leading_eigenvector(const Eigen::MatrixXd& m, double tol,
                                 int max_iter) {
  const int n = static_cast<int>(m.rows());
  if (n < 1 || m.cols() != n) throw DataError("matrix must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw DataError("matrix must be symmetric");
  }
  if (max_iter < 0) max_iter = 100 * n + 1000;

  const IterationOutcome top = power_iterate(m, tol, max_iter, 0, nullptr);
  if (!top.converged) {
    throw NumericError("power iteration did not converge after " +
                       std::to_string(top.iterations) +
                       " iterations (residual " + std::to_string(top.residual) +
                       ")");
  }

  TopEigenpair result;
  result.lambda1 = top.lambda;
  result.vector = top.vector;
  result.iterations = top.iterations;

  if (n == 1) {
    throw NumericError("eigengap undefined for a 1x1 matrix");
  }

  // Single deflation pass; only the runner-up eigenvalue is needed, and
  // its Rayleigh quotient is taken even if the deflated direction itself
  // has not settled (the value converges much faster than the vector).
  const Eigen::MatrixXd deflated =
      m - result.lambda1 * (result.vector * result.vector.transpose());
  const IterationOutcome second =
      power_iterate(deflated, tol, max_iter, 0x5EC0FDULL, &result.vector);
  result.lambda2 = second.lambda;
  result.iterations += second.iterations;

  const double gap = result.lambda1 - result.lambda2;
  if (gap < kDegenerateGapRel * std::max(1.0, result.lambda1)) {
    throw NumericError("leading eigenvalue is numerically degenerate (gap " +
                       std::to_string(gap) + ")");
  }
  return result;
}

SignCorrected sign_correct(const Eigen::VectorXd& v) {
  // <v, 1/sqrt(n)> has the sign of the plain entry sum.
  const double s = v.sum();
  if (s > 0.0) return {v, false};
  if (s < 0.0) return {-v, false};
  return {v, true};
}

SignCorrected sign_correct(const Eigen::VectorXd& v,
                           const Eigen::VectorXd& reference) {
  if (reference.size() != v.size()) {
    throw DataError("sign-correction reference has wrong length");
  }
  const double s = v.dot(reference);
  if (s > 0.0) return {v, false};
  if (s < 0.0) return {-v, false};
  return {v, true};
}

AlignmentDiagnostics alignment(const Eigen::VectorXd& u,
                               const Eigen::VectorXd& u_hat) {
  if (u.size() != u_hat.size()) throw DataError("alignment length mismatch");
  AlignmentDiagnostics d;
  d.alpha = u.dot(u_hat);
  d.cos_theta = d.alpha;
  d.sin_theta = std::sqrt(std::max(0.0, 1.0 - d.cos_theta * d.cos_theta));
  d.epsilon_norm = (u_hat - d.alpha * u).norm();
  return d;
}

bool sign_correction_guarantee(const Eigen::VectorXd& u,
                               const Eigen::VectorXd& u_hat,
                               const Eigen::VectorXd& reference) {
  const double ref_align = u.dot(reference);
  const double bound = std::sqrt(std::max(0.0, 1.0 - ref_align * ref_align));
  return std::abs(u.dot(u_hat)) > bound;
}

CentralityEstimate estimate_from_matrix(const Eigen::MatrixXd& covariance,
                                        int m, double tol, int max_iter) {
  const TopEigenpair top = leading_eigenvector(covariance, tol, max_iter);
  const SignCorrected corrected = sign_correct(top.vector);
  CentralityEstimate est;
  est.u_hat = corrected.vector;
  est.eigengap_hat = top.lambda1 - top.lambda2;
  est.m = m;
  est.iterations = top.iterations;
  est.sign_ambiguous = corrected.ambiguous;
  return est;
}

CentralityEstimate estimate_centrality(const SampleCovariance& c, double tol,
                                       int max_iter) {
  return estimate_from_matrix(c.matrix, c.m, tol, max_iter);
}

}  // namespace blindrank
