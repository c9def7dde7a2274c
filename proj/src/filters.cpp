#include "blindrank/filters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "blindrank/errors.hpp"

namespace blindrank {

namespace {

constexpr int kMaxPolyDegree = 64;
constexpr double kDegenerateGapRel = 1e-10;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

Eigen::VectorXd response_over_spectrum(const GraphFilter& f, const Spectrum& s) {
  const double l1 = s.eigenvalues(0);
  Eigen::VectorXd h(s.eigenvalues.size());
  for (Eigen::Index l = 0; l < h.size(); ++l) {
    h(l) = f.response(s.eigenvalues(l), l1);
  }
  return h;
}

}  // namespace

GraphFilter GraphFilter::polynomial(std::vector<double> coeffs,
                                    bool normalize_by_lambda1) {
  if (coeffs.empty()) throw ConfigError("polynomial filter needs at least one coefficient");
  if (static_cast<int>(coeffs.size()) > kMaxPolyDegree + 1) {
    throw ConfigError("polynomial filter degree capped at 64");
  }
  GraphFilter f;
  f.is_poly_ = true;
  f.coeffs_ = std::move(coeffs);
  f.normalize_ = normalize_by_lambda1;
  return f;
}

GraphFilter GraphFilter::spectral(const std::string& name) {
  GraphFilter f;
  f.is_poly_ = false;
  f.name_ = name;
  if (name == "sqrt_abs" || name == "identity") return f;
  if (name.rfind("heat:", 0) == 0) {
    try {
      f.heat_t_ = std::stod(name.substr(5));
    } catch (const std::exception&) {
      throw ConfigError("malformed heat filter name: " + name);
    }
    return f;
  }
  throw ConfigError("unknown spectral filter: " + name);
}

double GraphFilter::response(double lambda, double lambda1) const {
  if (is_poly_) {
    const double x = normalize_ ? lambda / lambda1 : lambda;
    double r = coeffs_.back();
    for (auto it = coeffs_.rbegin() + 1; it != coeffs_.rend(); ++it) {
      r = r * x + *it;
    }
    return r;
  }
  if (name_ == "sqrt_abs") return std::sqrt(std::abs(lambda));
  if (name_ == "identity") return 1.0;
  return std::exp(heat_t_ * lambda / lambda1);
}

std::string GraphFilter::id() const {
  if (!is_poly_) return "spectral:" + name_;
  std::string s = "poly:[";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (k) s += ",";
    s += format_double(coeffs_[k]);
  }
  s += "]";
  if (normalize_) s += ":norm";
  return s;
}

bool GraphFilter::nonnegative_coefficients() const {
  if (!is_poly_) return false;
  bool any_positive = false;
  for (double c : coeffs_) {
    if (c < 0.0) return false;
    if (c > 0.0) any_positive = true;
  }
  return any_positive;
}

Eigen::VectorXd apply_filter(const GraphFilter& f, const Graph& g,
                             const Eigen::VectorXd& x) {
  if (x.size() != g.n()) throw DataError("signal length does not match node count");
  if (f.is_polynomial()) {
    Eigen::MatrixXd b = g.adjacency();
    if (f.normalized()) b /= full_spectrum(g).eigenvalues(0);
    const auto& c = f.coeffs();
    Eigen::VectorXd r = c.back() * x;
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
      r = b * r + c[k] * x;
    }
    return r;
  }
  const Spectrum s = full_spectrum(g);
  const Eigen::VectorXd h = response_over_spectrum(f, s);
  return s.eigenvectors * (h.array() * (s.eigenvectors.transpose() * x).array()).matrix();
}

PopulationCovariance population_covariance(const GraphFilter& f, const Graph& g) {
  const Spectrum s = full_spectrum(g);
  const Eigen::VectorXd h = response_over_spectrum(f, s);
  const Eigen::VectorXd h2 = h.array().square();
  Eigen::MatrixXd c = s.eigenvectors * h2.asDiagonal() * s.eigenvectors.transpose();
  c = 0.5 * (c + c.transpose()).eval();

  std::vector<double> sorted(h2.data(), h2.data() + h2.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  PopulationCovariance out;
  out.matrix = std::move(c);
  if (sorted.size() > 1) {
    out.eigengap = sorted[0] - sorted[1];
    out.degenerate = out.eigengap < kDegenerateGapRel * std::max(1.0, sorted[0]);
  } else {
    out.eigengap = 0.0;
    out.degenerate = true;
  }
  return out;
}

bool leading_matches_centrality(const GraphFilter& f, const Graph& g) {
  const Spectrum s = full_spectrum(g);
  const Eigen::VectorXd h2 =
      response_over_spectrum(f, s).array().square();
  Eigen::Index top = 0;
  h2.maxCoeff(&top);
  double runner_up = -1.0;
  for (Eigen::Index l = 0; l < h2.size(); ++l) {
    if (l != top) runner_up = std::max(runner_up, h2(l));
  }
  if (h2.size() < 2 || h2(top) - runner_up < kDegenerateGapRel * std::max(1.0, h2(top))) {
    return false;
  }
  const CentralityVector u = exact_centrality(g);
  const double cos_theta = std::abs(u.values.dot(s.eigenvectors.col(top)));
  return cos_theta > 1.0 - 1e-8;
}

bool is_constructive(const GraphFilter& f, const Graph& g) {
  if (f.is_polynomial()) return f.nonnegative_coefficients();
  const Spectrum s = full_spectrum(g);
  const Eigen::VectorXd h = response_over_spectrum(f, s);
  if (h.minCoeff() < 0.0) return false;
  if (h.size() < 2) return false;
  const double top = h(0) * h(0);
  double runner_up = -1.0;
  for (Eigen::Index l = 1; l < h.size(); ++l) {
    runner_up = std::max(runner_up, h(l) * h(l));
  }
  return top - runner_up >= kDegenerateGapRel * std::max(1.0, top);
}

FilterOperator build_filter_operator(const GraphFilter& f, const Graph& g) {
  const Spectrum s = full_spectrum(g);
  const Eigen::VectorXd h = response_over_spectrum(f, s);
  FilterOperator op;
  op.operator_norm = h.cwiseAbs().maxCoeff();
  op.filter_id = f.id();
  if (f.is_polynomial()) {
    const int n = g.n();
    Eigen::MatrixXd b = g.adjacency();
    if (f.normalized()) b /= s.eigenvalues(0);
    const auto& c = f.coeffs();
    Eigen::MatrixXd x = c.back() * Eigen::MatrixXd::Identity(n, n);
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
      x = (b * x).eval();
      x.diagonal().array() += c[k];
    }
    op.matrix = std::move(x);
  } else {
    Eigen::MatrixXd m = s.eigenvectors * h.asDiagonal() * s.eigenvectors.transpose();
    op.matrix = 0.5 * (m + m.transpose());
  }
  return op;
}

}  // namespace blindrank
