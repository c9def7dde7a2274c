#include "blindrank/analysis.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

#include "blindrank/errors.hpp"

namespace blindrank {

namespace {

void validate_bound_inputs(const SamplingBoundInputs& in) {
  if (!(in.bound_constant > 0.0)) throw ConfigError("bound constant must be positive");
  if (!(in.eigengap > 0.0)) throw ConfigError("eigengap must be positive");
  if (!(in.eta > 0.0 && in.eta <= 1.0)) throw ConfigError("eta must lie in (0,1]");
}

double ones_alignment(const CentralityVector& u) {
  const double n = static_cast<double>(u.values.size());
  return u.values.sum() / std::sqrt(n);
}

std::vector<double> average_ranks(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&v](int a, int b) { return v(a) < v(b); });
  std::vector<double> ranks(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && v(idx[j + 1]) == v(idx[i])) ++j;
    const double r = 1.0 + (i + j) / 2.0;  // average of 1-based ranks i+1..j+1
    for (int k = i; k <= j; ++k) ranks[idx[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

SamplingBoundInputs bound_inputs_from_population(const PopulationCovariance& c,
                                                 CentralityVector u,
                                                 double eta) {
  SamplingBoundInputs in;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.matrix);
  in.bound_constant = es.eigenvalues().cwiseAbs().maxCoeff();
  in.eigengap = c.eigengap;
  in.eta = eta;
  in.u = std::move(u);
  return in;
}

double pairwise_sample_bound(const SamplingBoundInputs& in, int i, int j) {
  validate_bound_inputs(in);
  const int n = static_cast<int>(in.u.values.size());
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw ConfigError("node indices out of range");
  }
  const double diff = in.u.values(j) - in.u.values(i);
  if (std::abs(diff) <= 1e-15) {
    throw NumericError("sampling bound undefined for equal centralities");
  }
  const double pair_term = 2.0 / (diff * diff);
  const double align = ones_alignment(in.u);
  const double global_term = 1.0 / (align * align);
  const double ratio = in.bound_constant / in.eigengap;
  return -std::log(in.eta) * ratio * ratio * std::max(pair_term, global_term);
}

bool threshold_viability_check(const SamplingBoundInputs& in, double tau, long m) {
  validate_bound_inputs(in);
  if (!(tau > 0.0)) throw ConfigError("tau must be positive");
  if (m < 1) throw ConfigError("sample count must be at least 1");
  const double lhs = (in.bound_constant / in.eigengap) *
                     std::sqrt(-std::log(in.eta) / static_cast<double>(m));
  const double rhs = std::min(tau / std::sqrt(2.0), ones_alignment(in.u));
  return lhs < rhs;
}

double threshold_prescription(double c_fit, long m) {
  if (!(c_fit > 0.0)) throw ConfigError("prescription constant must be positive");
  if (m < 1) throw ConfigError("sample count must be at least 1");
  return c_fit / std::sqrt(static_cast<double>(m));
}

InverseSqrtFit fit_inverse_sqrt(const std::vector<long>& m_values,
                                const std::vector<double>& values) {
  if (m_values.size() != values.size() || m_values.size() < 2) {
    throw ConfigError("inverse-sqrt fit needs at least two matched points");
  }
  double num = 0.0, den = 0.0, mean = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double x = 1.0 / std::sqrt(static_cast<double>(m_values[k]));
    num += x * values[k];
    den += x * x;
    mean += values[k];
  }
  mean /= static_cast<double>(values.size());
  InverseSqrtFit fit;
  fit.c = num / den;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double pred = fit.c / std::sqrt(static_cast<double>(m_values[k]));
    ss_res += (values[k] - pred) * (values[k] - pred);
    ss_tot += (values[k] - mean) * (values[k] - mean);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  return fit;
}

CrgmModel crgm_predicted_centrality(int n, double gamma) {
  if (n < 1) throw ConfigError("node count must be at least 1");
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw ConfigError("mixture gamma must lie in (0,1]; the offset diverges at 0");
  }
  Eigen::VectorXd v(n);
  const double a = std::sqrt(10.0) / 2.0;
  const double b = 1.0 / std::sqrt(2.0);
  for (int i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    v(i - 1) = a * x * x + b;
  }
  v.normalize();
  const double beta = 2.275 * (1.0 - gamma) / gamma;
  Eigen::VectorXd shifted =
      v.array() + beta / std::sqrt(static_cast<double>(n));
  shifted.normalize();
  CrgmModel model;
  model.n = n;
  model.gamma = gamma;
  model.beta = beta;
  model.predicted = CentralityVector::checked(std::move(shifted));
  return model;
}

ErrorRateModelFit fit_error_rate_model(const std::vector<ErrorRateCell>& rates,
                                       const CentralityVector& u,
                                       int ref_node) {
  const int n = static_cast<int>(u.values.size());
  if (ref_node < 0 || ref_node >= n) throw ConfigError("reference node out of range");
  std::vector<double> xs, ys;
  for (const ErrorRateCell& cell : rates) {
    if (cell.node < 0 || cell.node >= n) throw ConfigError("cell node out of range");
    if (cell.rate > 0.0 && cell.rate < 1.0) {
      const double d = u.values(cell.node) - u.values(ref_node);
      xs.push_back(static_cast<double>(cell.m) * d * d);
      ys.push_back(std::log(cell.rate));
    }
  }
  if (xs.size() < 3) {
    throw DataError("error-rate fit needs at least 3 rates strictly inside (0,1)");
  }
  const double k = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    sxx += (xs[t] - mx) * (xs[t] - mx);
    sxy += (xs[t] - mx) * (ys[t] - my);
  }
  ErrorRateModelFit fit;
  fit.c0 = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.c1 = my - fit.c0 * mx;
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const double pred = fit.c0 * xs[t] + fit.c1;
    ss_res += (ys[t] - pred) * (ys[t] - pred);
    ss_tot += (ys[t] - my) * (ys[t] - my);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 ? 1.0 : 0.0);
  fit.cells_used = static_cast<int>(xs.size());
  return fit;
}

Eigen::VectorXd worst_case_perturbation(const CentralityVector& u, int i,
                                        int j, double alpha) {
  const int n = static_cast<int>(u.values.size());
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw ConfigError("node indices out of range");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0,1]");
  const double d = u.values(j) - u.values(i);
  if (!(d > 0.0)) throw ConfigError("requires u_j > u_i");
  const double scale = std::sqrt((1.0 - alpha * alpha) / (2.0 - d * d));
  Eigen::VectorXd eps = d * u.values;
  eps(i) += 1.0;
  eps(j) -= 1.0;
  eps *= scale;
  if (std::abs(eps.dot(u.values)) > 1e-10 ||
      std::abs(eps.norm() - std::sqrt(1.0 - alpha * alpha)) > 1e-10) {
    throw NumericError("perturbation failed its orthogonality/norm identities");
  }
  return eps;
}

SpearmanResult spearman(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int n = static_cast<int>(x.size());
  if (y.size() != n) throw DataError("vector lengths differ");
  if (n < 3) throw ConfigError("rank correlation needs at least 3 observations");
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double mean = (n + 1) / 2.0;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw NumericError("rank correlation undefined for constant input");
  }
  SpearmanResult result;
  result.rho = sxy / std::sqrt(sxx * syy);
  const double r = std::clamp(result.rho, -1.0, 1.0);
  if (std::abs(r) >= 1.0) {
    result.p_value = 0.0;
    return result;
  }
  const double t = r * std::sqrt((n - 2) / (1.0 - r * r));
  boost::math::students_t dist(n - 2);
  result.p_value = 2.0 * boost::math::cdf(dist, -std::abs(t));
  return result;
}

}  // namespace blindrank
