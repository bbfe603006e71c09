#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "nsopt/problems.hpp"

using namespace nsopt;

namespace {

Dataset tiny_dataset() {
  // three hand-built samples in R^2
  Dataset ds;
  ds.dimension = 2;
  ds.rows.push_back({SparseVector({0}, {1.0}), 1.0});          // x=[1,0], y=+1
  ds.rows.push_back({SparseVector({0, 1}, {1.0, 2.0}), -1.0});  // x=[1,2], y=-1
  ds.rows.push_back({SparseVector({1}, {0.5}), 1.0});          // x=[0,.5], y=+1
  return ds;
}

}  // namespace

TEST_CASE("hinge per-sample values and subgradients") {
  Dataset ds;
  ds.dimension = 1;
  ds.rows.push_back({SparseVector({0}, {1.0}), 1.0});
  const HingeProblem p(ds, 0.1, HingeMode::l1_regularized);

  // zero weights: value 1, subgradient -y x
  auto [v0, g0] = p.value_subgrad(Vector{0.0}, 0);
  CHECK(v0 == doctest::Approx(1.0));
  CHECK(g0[0] == doctest::Approx(-1.0));

  // margin 2: inactive hinge
  auto [v1, g1] = p.value_subgrad(Vector{2.0}, 0);
  CHECK(v1 == 0.0);
  CHECK(g1[0] == 0.0);

  // tie at margin exactly 1 returns the zero subgradient
  auto [v2, g2] = p.value_subgrad(Vector{1.0}, 0);
  CHECK(v2 == 0.0);
  CHECK(g2[0] == 0.0);
}

TEST_CASE("hinge full objective matches hand arithmetic") {
  const HingeProblem p(tiny_dataset(), 0.5, HingeMode::l1_regularized);
  const Vector w{1.0, -0.5};
  // margins: +1*(1) = 1 -> 0; -1*(1-1) = 0 -> 1; +1*(-0.25) -> 1.25
  const double mean_hinge = (0.0 + 1.0 + 1.25) / 3.0;
  const double expected = 0.5 * 1.5 + mean_hinge;
  CHECK(p.full_objective(w) == doctest::Approx(expected).epsilon(1e-12));

  // w = 0 on any labeled dataset: every hinge is 1, regularizer 0
  CHECK(p.full_objective(Vector{0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("full objective decomposes into per-sample calls") {
  const HingeProblem p(tiny_dataset(), 0.25, HingeMode::l2_svm);
  Rng rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    Vector w{gauss(rng), gauss(rng)};
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      sum += p.value_subgrad(w, i).first;
    }
    const double expected =
        sum / static_cast<double>(p.size()) + 0.125 * squared_norm(w);
    CHECK(p.full_objective(w) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("svm mode folds the quadratic into the oracle") {
  const HingeProblem p(tiny_dataset(), 0.4, HingeMode::l2_svm);
  const Vector w{0.3, -0.8};
  auto [value, grad] = p.value_subgrad(w);
  // value includes (lambda/2)||w||^2 and the subgradient includes lambda w
  double mean_hinge = 0.0;
  Vector manual(2, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto [vi, gi] = p.value_subgrad(w, i);
    mean_hinge += vi / 3.0;
    axpy(1.0 / 3.0, gi, manual);
  }
  CHECK(value ==
        doctest::Approx(mean_hinge + 0.2 * squared_norm(w)).epsilon(1e-12));
  axpy(0.4, w, manual);
  CHECK(distance(grad, manual) <= 1e-12);
  CHECK(p.mu() == doctest::Approx(0.4));
  // Pegasos ball radius 1/sqrt(lambda)
  CHECK(p.feasible_set().radius() == doctest::Approx(1.0 / std::sqrt(0.4)));
}

TEST_CASE("hinge stochastic mean over all indices equals the full subgradient") {
  const HingeProblem p(tiny_dataset(), 0.1, HingeMode::l1_regularized);
  const Vector w{0.2, 0.7};
  Vector mean(2, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    axpy(1.0 / 3.0, p.value_subgrad(w, i).second, mean);
  }
  CHECK(distance(mean, p.value_subgrad(w).second) <= 1e-15);
}

TEST_CASE("max-affine hand instances") {
  // pieces {w, -w}: f = |w|
  MaxAffineProblem abs_problem({Vector{1.0}, Vector{-1.0}}, 0.0, 0.0);
  CHECK(abs_problem.value(Vector{-2.5}) == doctest::Approx(2.5));
  CHECK(abs_problem.fstar() == 0.0);
  CHECK(abs_problem.subgrad(Vector{-2.5})[0] == doctest::Approx(-1.0));

  // pieces {w + 1, -w + 1}: f* = 1 at 0
  MaxAffineProblem shifted({Vector{1.0}, Vector{-1.0}}, 1.0, 0.0);
  CHECK(shifted.value(Vector{0.0}) == doctest::Approx(1.0));
  CHECK(shifted.fstar() == doctest::Approx(1.0));
}

TEST_CASE("generated max-affine never dips below fstar on a grid scan") {
  const MaxAffineProblem p = make_max_affine(6, 10, 0.0, 21);
  Rng rng(5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int line = 0; line < 8; ++line) {
    Vector dir(6);
    for (double& x : dir) x = gauss(rng);
    for (int k = -200; k <= 200; ++k) {
      const Vector w = scaled(dir, 0.005 * k);
      CHECK(p.value(w) >= p.fstar() - 1e-9);
    }
  }
  // and the quadratic variant keeps the same optimum
  const MaxAffineProblem q = make_max_affine(6, 10, 1.5, 21);
  CHECK(q.value(zeros(6)) == doctest::Approx(q.fstar()));
  for (int k = 1; k <= 100; ++k) {
    Vector dir(6);
    for (double& x : dir) x = gauss(rng);
    const Vector w = scaled(dir, 0.01 * k);
    CHECK(q.value(w) >= q.fstar() - 1e-9);
  }
}

TEST_CASE("max-affine lipschitz bound dominates observed subgradients") {
  const MaxAffineProblem p = make_max_affine(8, 9, 0.7, 33);
  const double radius = 2.0;
  const double m = p.lipschitz_bound(radius);
  Rng rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 10000; ++rep) {
    Vector w(8);
    double n2 = 0.0;
    for (double& x : w) {
      x = gauss(rng);
      n2 += x * x;
    }
    const double r = radius * std::pow(unif(rng), 1.0 / 8.0);
    for (double& x : w) x *= r / std::sqrt(n2);
    CHECK(norm(p.subgrad(w)) <= m + 1e-12);
  }
}

TEST_CASE("max-affine oracles pass subgradient validity") {
  Rng rng(11);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto pairs = [&](std::size_t n) {
    std::vector<std::pair<Vector, Vector>> out(n);
    for (auto& [u, w] : out) {
      u.resize(8);
      w.resize(8);
      for (double& x : u) x = gauss(rng);
      for (double& x : w) x = gauss(rng);
    }
    return out;
  };
  const MaxAffineProblem plain = make_max_affine(8, 10, 0.0, 1);
  CHECK(check_subgradient_validity(plain.oracle(), pairs(1000)).pass());
  const MaxAffineProblem strong = make_max_affine(8, 10, 2.0, 2);
  CHECK(check_subgradient_validity(strong.oracle(), pairs(1000)).pass());
}

TEST_CASE("max-affine stochastic noise is unbiased and reproducible") {
  const MaxAffineProblem p = make_max_affine(5, 6, 0.0, 9, 0.5);
  const Oracle o = p.oracle();
  REQUIRE(static_cast<bool>(o.sample_subgrad));
  const Vector w{0.3, -1.0, 0.2, 0.0, 0.9};
  Rng rng_a(77);
  Rng rng_b(77);
  CHECK(o.sample_subgrad(w, rng_a) == o.sample_subgrad(w, rng_b));

  Rng rng(123);
  Vector mean(5, 0.0);
  const int draws = 200000;
  for (int k = 1; k <= draws; ++k) {
    const Vector g = o.sample_subgrad(w, rng);
    for (std::size_t i = 0; i < 5; ++i) {
      mean[i] += (g[i] - mean[i]) / k;
    }
  }
  const Vector full = p.subgrad(w);
  // sd per component is 0.5/sqrt(5); 4 sigma over 2e5 draws
  const double tol = 4.0 * (0.5 / std::sqrt(5.0)) / std::sqrt(double(draws));
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(mean[i] - full[i]) <= tol);
  }
}

TEST_CASE("diagonal quadratic basics") {
  const DiagonalQuadratic q(Vector{0.5, 2.0});
  CHECK(q.smooth_l() == doctest::Approx(2.0));
  CHECK(q.value(Vector{2.0, 1.0}) == doctest::Approx(0.5 * 0.5 * 4 + 0.5 * 2));
  CHECK(q.grad(Vector{2.0, 1.0}) == Vector{1.0, 2.0});
  CHECK_THROWS_AS(DiagonalQuadratic(Vector{0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("problem construction errors") {
  CHECK_THROWS_AS(HingeProblem(Dataset{}, 0.1, HingeMode::l1_regularized),
                  std::invalid_argument);
  Dataset bad = tiny_dataset();
  bad.rows[0].label = 2.0;
  CHECK_THROWS_AS(HingeProblem(bad, 0.1, HingeMode::l1_regularized),
                  std::invalid_argument);
  CHECK_THROWS_AS(HingeProblem(tiny_dataset(), 0.0, HingeMode::l1_regularized),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_max_affine(4, 1, 0.0, 1), std::invalid_argument);
}
