#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "nsopt/problems.hpp"
#include "nsopt/types.hpp"

using namespace nsopt;

TEST_CASE("dot matches hand values") {
  CHECK(dot(Vector{1, 2, 3}, Vector{4, 5, 6}) == doctest::Approx(32.0));
  SparseVector sv({1}, {2.0});
  CHECK(dot(sv, Vector{7, 9, 11}) == doctest::Approx(18.0));
}

TEST_CASE("dot agrees with a naive loop oracle on random pairs") {
  Rng rng(123);
  std::normal_distribution<double> gauss(0.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 1 + rng() % 64;
    Vector a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = gauss(rng);
      b[i] = gauss(rng);
    }
    double naive = 0.0;
    for (std::size_t i = 0; i < n; ++i) naive += a[i] * b[i];
    const double got = dot(a, b);
    CHECK(std::abs(got - naive) <=
          1e-12 * std::max(1.0, std::abs(naive)));
  }
}

TEST_CASE("dot rejects dimension mismatch") {
  CHECK_THROWS_AS(dot(Vector{1, 2}, Vector{1, 2, 3}), std::invalid_argument);
  SparseVector sv({5}, {1.0});
  CHECK_THROWS_AS(sv.dot(Vector{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("sparse vector invariants are enforced") {
  CHECK_THROWS_AS(SparseVector({2, 1}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector({1, 1}, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector({0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(SparseVector({0, 1}, {1.0}), std::invalid_argument);
  const SparseVector ok({0, 4}, {1.5, -2.0});
  CHECK(ok.nnz() == 2);
  CHECK(ok.min_dimension() == 5);
  CHECK(ok.squared_norm() == doctest::Approx(1.5 * 1.5 + 4.0));
}

TEST_CASE("finite-entry guard") {
  CHECK(all_finite(Vector{1.0, -2.0}));
  CHECK_FALSE(all_finite(Vector{1.0, std::nan("")}));
  CHECK_THROWS(require_finite(Vector{std::numeric_limits<double>::infinity()},
                              "test"));
}

TEST_CASE("solver state initialization mirrors w0 = w_{-1}") {
  const SolverState s = SolverState::initial(Vector{1.0, 2.0});
  CHECK(s.t == 0);
  CHECK(s.w_curr == s.w_prev);
  CHECK(s.theta_curr == 1.0);
  CHECK(s.theta_prev == 1.0);
}

namespace {

Oracle linear_oracle(const Vector& c) {
  Oracle o;
  o.value = [c](const Vector& w) { return dot(c, w); };
  o.subgrad = [c](const Vector&) { return c; };
  return o;
}

std::vector<std::pair<Vector, Vector>> random_pairs(std::size_t n,
                                                    std::size_t dim,
                                                    std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.5);
  std::vector<std::pair<Vector, Vector>> pairs(n);
  for (auto& [u, w] : pairs) {
    u.resize(dim);
    w.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      u[i] = gauss(rng);
      w[i] = gauss(rng);
    }
  }
  return pairs;
}

}  // namespace

TEST_CASE("subgradient validity: linear functions give exactly zero") {
  const Oracle o = linear_oracle(Vector{0.5, -2.0, 1.0});
  const auto report = check_subgradient_validity(o, random_pairs(100, 3, 7));
  CHECK(report.worst_slack == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(report.pass());
}

TEST_CASE("subgradient validity: hinge oracle over random pairs") {
  Dataset ds = make_synthetic_dataset(60, 24, 5);
  const HingeProblem problem(ds, 0.05, HingeMode::l1_regularized);
  const auto report = check_subgradient_validity(problem.oracle(),
                                                 random_pairs(100, 24, 8));
  CHECK(report.pass());
}

TEST_CASE("subgradient validity: squared-l2 passes the strong form") {
  const double lambda = 0.7;
  Oracle o;
  o.value = [lambda](const Vector& w) {
    return 0.5 * lambda * squared_norm(w);
  };
  o.subgrad = [lambda](const Vector& w) { return scaled(w, lambda); };
  o.mu = lambda;  // strong convexity modulus equals lambda
  const auto report = check_subgradient_validity(o, random_pairs(200, 6, 9));
  CHECK(report.pass());
  // and a too-large modulus is caught
  Oracle bad = o;
  bad.mu = 2.5 * lambda;
  CHECK_FALSE(check_subgradient_validity(bad, random_pairs(200, 6, 10)).pass());
}

TEST_CASE("svm-mode hinge oracle is lambda-strongly convex") {
  Dataset ds = make_synthetic_dataset(50, 16, 6);
  const HingeProblem problem(ds, 0.2, HingeMode::l2_svm);
  Oracle o = problem.oracle();
  CHECK(o.mu == doctest::Approx(0.2));
  CHECK(check_subgradient_validity(o, random_pairs(150, 16, 11)).pass());
}

TEST_CASE("stochastic hinge estimates are unbiased (3 sigma componentwise)") {
  Dataset ds = make_synthetic_dataset(40, 12, 4);
  const HingeProblem problem(ds, 0.05, HingeMode::l1_regularized);
  const Oracle o = problem.oracle();
  Rng rng(2024);
  Vector w(12);
  std::normal_distribution<double> gauss(0.0, 0.5);
  for (double& x : w) x = gauss(rng);

  const std::size_t draws = 100000;
  Vector mean(12, 0.0), m2(12, 0.0);
  for (std::size_t k = 1; k <= draws; ++k) {
    const Vector g = o.sample_subgrad(w, rng);
    for (std::size_t i = 0; i < 12; ++i) {
      const double delta = g[i] - mean[i];
      mean[i] += delta / static_cast<double>(k);
      m2[i] += delta * (g[i] - mean[i]);
    }
  }
  const Vector full = o.subgrad(w);
  for (std::size_t i = 0; i < 12; ++i) {
    const double sd = std::sqrt(m2[i] / static_cast<double>(draws - 1));
    const double tol = 3.0 * sd / std::sqrt(static_cast<double>(draws)) + 1e-12;
    CHECK(std::abs(mean[i] - full[i]) <= tol);
  }
}
