#include <doctest.h>

#include <cmath>

#include "blindrank/errors.hpp"
#include "blindrank/graph.hpp"
#include "blindrank/spectral.hpp"
#include "test_helpers.hpp"

using namespace blindrank;

TEST_CASE("diagonal top pair") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = 1.0;
  const TopEigenpair top = leading_eigenvector(m, 1e-12);
  CHECK(top.lambda1 == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(top.lambda2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(top.vector(0)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(top.vector(1)) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("identity matrix is degenerate") {
  CHECK_THROWS_AS(leading_eigenvector(Eigen::MatrixXd::Identity(2, 2)),
                  NumericError);
}

TEST_CASE("squared path adjacency has a tied top pair") {
  // A^2 of the 3-path has eigenvalues {2, 2, 0}: the +/- sqrt(2)
  // adjacency eigenvalues collide after squaring.
  const Graph p3 = gen_named("path", 3);
  const Eigen::MatrixXd m = p3.adjacency() * p3.adjacency();
  CHECK_THROWS_AS(leading_eigenvector(m), NumericError);
}

TEST_CASE("complete-graph sqrt-abs covariance top pair") {
  // C_y = I + 2*u u^T on K4, so (lambda1, lambda2) = (3, 1) with the
  // constant unit vector on top.
  const Graph k4 = gen_named("complete", 4);
  const PopulationCovariance c =
      population_covariance(GraphFilter::spectral("sqrt_abs"), k4);
  const TopEigenpair top = leading_eigenvector(c.matrix, 1e-12);
  CHECK(top.lambda1 == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(top.lambda2 == doctest::Approx(1.0).epsilon(1e-8));
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(top.vector(i)) == doctest::Approx(0.5).epsilon(1e-9));
  }
}

TEST_CASE("asymmetric input is rejected") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0.5, 0.2, 1;
  CHECK_THROWS_AS(leading_eigenvector(m), DataError);
}

TEST_CASE("non-convergence carries the residual") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
  m.diagonal() << 1.0, 1.0 - 1e-9, 0.2;
  try {
    leading_eigenvector(m, 1e-13, 50);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("residual") != std::string::npos);
  }
}

TEST_CASE("iterative solver agrees with the dense oracle") {
  Rng rng(314);
  int tested = 0;
  while (tested < 50) {
    const int n = 4 + static_cast<int>(rng.next_u64() % 29);  // up to 32
    const Eigen::MatrixXd m = testing::random_psd_matrix(n, rng);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense(m);
    const double l1 = dense.eigenvalues()(n - 1);
    const double l2 = dense.eigenvalues()(n - 2);
    if ((l1 - l2) / std::max(1.0, l1) <= 1e-6) continue;
    ++tested;
    const TopEigenpair top = leading_eigenvector(m, 1e-13, 500000);
    // sin(angle) via the orthogonal component; 1 - cos^2 cannot resolve
    // angles this small.
    const Eigen::VectorXd dense_top = dense.eigenvectors().col(n - 1);
    const double sin_theta =
        (top.vector - top.vector.dot(dense_top) * dense_top).norm();
    CHECK(sin_theta < 1e-8);
    CHECK(top.lambda1 == doctest::Approx(l1).epsilon(1e-10));
    CHECK(top.lambda2 == doctest::Approx(l2).epsilon(1e-6));
  }
}

TEST_CASE("sign correction against the default reference") {
  Eigen::VectorXd v(2);
  v << -0.6, -0.8;
  const SignCorrected flipped = sign_correct(v);
  CHECK(flipped.vector(0) == 0.6);
  CHECK(flipped.vector(1) == 0.8);
  CHECK_FALSE(flipped.ambiguous);

  Eigen::VectorXd w(2);
  w << 0.6, 0.8;
  const SignCorrected kept = sign_correct(w);
  CHECK((kept.vector - w).cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd orth(2);
  orth << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  const SignCorrected amb = sign_correct(orth);
  CHECK(amb.ambiguous);
  CHECK((amb.vector - orth).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sign correction is idempotent") {
  Rng rng(99);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd v = testing::random_unit_vector(6, rng);
    const Eigen::VectorXd once = sign_correct(v).vector;
    const Eigen::VectorXd twice = sign_correct(once).vector;
    CHECK((once - twice).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("alignment diagnostics") {
  Eigen::VectorXd u(2), v(2);
  u << 1, 0;
  const AlignmentDiagnostics same = alignment(u, u);
  CHECK(same.alpha == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.sin_theta == doctest::Approx(0.0).epsilon(1e-12));

  v << 0, 1;
  const AlignmentDiagnostics orth = alignment(u, v);
  CHECK(orth.alpha == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(orth.sin_theta == doctest::Approx(1.0).epsilon(1e-12));

  v << std::sqrt(3.0) / 2.0, 0.5;
  const AlignmentDiagnostics deg30 = alignment(u, v);
  CHECK(deg30.alpha == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK(deg30.sin_theta == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("alignment identities on random pairs") {
  Rng rng(123);
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + static_cast<int>(rng.next_u64() % 10);
    const Eigen::VectorXd u = testing::random_unit_vector(n, rng);
    const Eigen::VectorXd v = testing::random_unit_vector(n, rng);
    const AlignmentDiagnostics d = alignment(u, v);
    CHECK(d.sin_theta * d.sin_theta + d.cos_theta * d.cos_theta ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(d.epsilon_norm - d.sin_theta) < 1e-10);
    // Reconstruction: alpha*u + eps recovers v entrywise.
    const Eigen::VectorXd eps = v - d.alpha * u;
    CHECK((d.alpha * u + eps - v).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("orientation guarantee hypothesis") {
  const int n = 4;
  const Eigen::VectorXd ones_dir = Eigen::VectorXd::Constant(n, 0.5);
  CHECK(sign_correction_guarantee(ones_dir, ones_dir, ones_dir));

  Eigen::VectorXd u(2), ref(2);
  u << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  ref << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  // u orthogonal to the reference: the hypothesis |<u,v>| > 1 never holds.
  CHECK_FALSE(sign_correction_guarantee(u, u, ref));
}

TEST_CASE("orientation guarantee implies positive correlation after correction") {
  // The guarantee presumes the target vector's own orientation: a true
  // centrality has non-negative entries, so it cannot anti-align with the
  // all-ones reference. Sampling u from the whole sphere instead produces
  // counterexamples with <u, 1> < 0.
  Rng rng(2718);
  const int n = 5;
  const Eigen::VectorXd ref = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(5.0));
  int hits = 0;
  for (int t = 0; t < 10000; ++t) {
    const Eigen::VectorXd u = testing::random_nonnegative_unit_vector(n, rng);
    const Eigen::VectorXd v = testing::random_unit_vector(n, rng);
    if (!sign_correction_guarantee(u, v, ref)) continue;
    ++hits;
    CHECK(u.dot(sign_correct(v).vector) >= 0.0);
  }
  CHECK(hits > 0);  // the hypothesis fires on a fair share of draws
}

TEST_CASE("centrality estimate pipeline fields") {
  const Graph k4 = gen_named("complete", 4);
  const PopulationCovariance c =
      population_covariance(GraphFilter::spectral("sqrt_abs"), k4);
  const CentralityEstimate est = estimate_from_matrix(c.matrix, 0, 1e-12);
  CHECK(est.m == 0);
  CHECK(est.eigengap_hat == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(est.u_hat.sum() >= 0.0);
  CHECK(est.iterations > 0);
  CHECK_FALSE(est.sign_ambiguous);
  CHECK(est.u_hat.norm() == doctest::Approx(1.0).epsilon(1e-12));
}
