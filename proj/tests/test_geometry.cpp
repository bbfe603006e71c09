#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "nsopt/geometry.hpp"
#include "nsopt/verify.hpp"

using namespace nsopt;

namespace {

Vector random_vector(Rng& rng, std::size_t n, double scale = 2.0) {
  std::normal_distribution<double> gauss(0.0, scale);
  Vector v(n);
  for (double& x : v) x = gauss(rng);
  return v;
}

}  // namespace

TEST_CASE("projection basics") {
  const FeasibleSet whole = FeasibleSet::whole_space();
  CHECK(project(whole, Vector{5, -2}) == Vector{5, -2});

  const FeasibleSet ball = FeasibleSet::l2_ball(1.0);
  const Vector p = project(ball, Vector{3, 4});
  CHECK(p[0] == doctest::Approx(0.6));
  CHECK(p[1] == doctest::Approx(0.8));

  const FeasibleSet shifted = FeasibleSet::l2_ball(2.0, Vector{1, 1});
  const Vector q = project(shifted, Vector{1, 4});
  CHECK(q[0] == doctest::Approx(1.0));
  CHECK(q[1] == doctest::Approx(3.0));
}

TEST_CASE("projection beats 10^4 sampled feasible points") {
  Rng rng(17);
  const FeasibleSet ball = FeasibleSet::l2_ball(1.5, Vector{0.5, -0.25, 0.0});
  for (int rep = 0; rep < 5; ++rep) {
    const Vector w = random_vector(rng, 3, 4.0);
    const Vector p = project(ball, w);
    const double analytic = distance(p, w);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int s = 0; s < 10000; ++s) {
      Vector cand(3);
      double n2 = 0.0;
      for (double& x : cand) {
        x = unif(rng);
        n2 += x * x;
      }
      // scale into the ball, random radius
      const double r = 1.5 * std::pow(std::abs(unif(rng)), 1.0 / 3.0);
      const double scale = n2 > 0 ? r / std::sqrt(n2) : 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        cand[i] = ball.center()[i] + scale * cand[i];
      }
      CHECK(analytic <= distance(cand, w) + 1e-6);
    }
  }
}

TEST_CASE("projection idempotence and non-expansiveness, 1000 random inputs") {
  Rng rng(99);
  const FeasibleSet sets[] = {FeasibleSet::whole_space(),
                              FeasibleSet::l2_ball(1.0),
                              FeasibleSet::l2_ball(0.5, Vector{1, -2, 0.5})};
  for (const auto& set : sets) {
    for (int rep = 0; rep < 1000; ++rep) {
      const Vector u = random_vector(rng, 3);
      const Vector w = random_vector(rng, 3);
      const Vector pu = project(set, u);
      const Vector pw = project(set, w);
      CHECK(distance(project(set, pu), pu) <= 1e-10);
      CHECK(distance(pu, pw) <= distance(u, w) + 1e-10);
    }
  }
}

TEST_CASE("prox_l1 hand values and edge cases") {
  const Vector out = prox_l1(Vector{3, -0.5, 0}, 1.0);
  CHECK(out == Vector{2, 0, 0});
  CHECK(prox_l1(Vector{1.5, -2}, 0.0) == Vector{1.5, -2});
  CHECK_THROWS_AS(prox_l1(Vector{1}, -0.1), std::invalid_argument);
  // exact zeros whenever |v| <= tau
  const Vector clipped = prox_l1(Vector{0.3, -0.7, 0.9}, 1.0);
  CHECK(clipped == Vector{0, 0, 0});
}

TEST_CASE("prox_l1 matches the scalar grid oracle") {
  Rng rng(31);
  std::uniform_real_distribution<double> vdist(-5.0, 5.0);
  std::uniform_real_distribution<double> tdist(0.0, 2.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double v = vdist(rng);
    const double tau = tdist(rng);
    const double expected = prox_l1(Vector{v}, tau)[0];
    const double grid = grid_prox_oracle(
        [&](double x) { return tau * std::abs(x) + 0.5 * (x - v) * (x - v); },
        -8.0, 8.0, 1e-4);
    CHECK(std::abs(expected - grid) <= 1e-3);
  }
}

TEST_CASE("prox_l1 is non-expansive") {
  Rng rng(41);
  for (int rep = 0; rep < 300; ++rep) {
    const Vector u = random_vector(rng, 6);
    const Vector v = random_vector(rng, 6);
    std::uniform_real_distribution<double> tdist(0.0, 1.5);
    const double tau = tdist(rng);
    CHECK(distance(prox_l1(u, tau), prox_l1(v, tau)) <=
          distance(u, v) + 1e-12);
  }
}

TEST_CASE("composite_step_general closed forms") {
  // plain gradient step
  const Vector r0 = composite_step_general(Vector{1}, Vector{1}, 0.125,
                                           Regularizer::zero(),
                                           FeasibleSet::whole_space());
  CHECK(r0[0] == doctest::Approx(0.875));

  // soft-threshold composition: y - a g = [3, -0.5], tau = a lambda = 2
  const Vector r1 = composite_step_general(Vector{3, -0.5}, Vector{0, 0}, 1.0,
                                           Regularizer::l1(2.0),
                                           FeasibleSet::whole_space());
  CHECK(r1 == Vector{1, 0});

  // squared-l2 shrinkage
  const Vector r2 = composite_step_general(Vector{2}, Vector{0}, 1.0,
                                           Regularizer::squared_l2(3.0),
                                           FeasibleSet::whole_space());
  CHECK(r2[0] == doctest::Approx(0.5));

  CHECK_THROWS_AS(
      composite_step_general(Vector{1}, Vector{1}, 1.0, Regularizer::l1(1.0),
                             FeasibleSet::l2_ball(1.0)),
      std::invalid_argument);
}

TEST_CASE("composite steps minimize their subproblems (perturbation oracle)") {
  Rng rng(53);
  const Regularizer regs[] = {Regularizer::zero(), Regularizer::l1(0.8),
                              Regularizer::squared_l2(1.3)};
  for (const auto& reg : regs) {
    for (int rep = 0; rep < 5; ++rep) {
      const Vector y = random_vector(rng, 4);
      const Vector g = random_vector(rng, 4);
      const double a = 0.37;
      const Vector w = composite_step_general(y, g, a, reg,
                                              FeasibleSet::whole_space());
      auto objective = [&](const Vector& x) {
        return a * dot(g, x) + a * reg.value(x) +
               0.5 * squared_norm(add_scaled(x, -1.0, y));
      };
      const double at_w = objective(w);
      CHECK(at_w <= objective(y) + 1e-9);
      std::normal_distribution<double> noise(0.0, 0.3);
      for (int s = 0; s < 10000; ++s) {
        Vector cand = w;
        for (double& x : cand) x += noise(rng);
        CHECK(at_w <= objective(cand) + 1e-9);
      }
    }
  }
}

TEST_CASE("composite_step_strong reduces to the general step as mu -> 0") {
  Rng rng(67);
  for (int rep = 0; rep < 20; ++rep) {
    const Vector y = random_vector(rng, 5);
    const Vector wt = random_vector(rng, 5);
    const Vector g = random_vector(rng, 5);
    const double a = 0.21;
    for (const auto& reg : {Regularizer::zero(), Regularizer::l1(0.5),
                            Regularizer::squared_l2(0.9)}) {
      const Vector strong = composite_step_strong(
          y, wt, g, a, 0.5, 1e-12, reg, FeasibleSet::whole_space());
      const Vector general = composite_step_general(
          y, g, a, reg, FeasibleSet::whole_space());
      CHECK(distance(strong, general) <= 1e-9);
    }
  }
}

TEST_CASE("composite_step_strong: y == w_t makes the combined center y") {
  Rng rng(71);
  const Vector y = random_vector(rng, 4);
  const Vector g(4, 0.0);
  // with g = 0 and r = zero the minimizer is the center c, which must be y
  const Vector w = composite_step_strong(y, y, g, 0.7, 0.6, 2.5,
                                         Regularizer::zero(),
                                         FeasibleSet::whole_space());
  CHECK(distance(w, y) <= 1e-12);
}

TEST_CASE("composite_step_strong matches the per-coordinate grid oracle") {
  Rng rng(83);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::uniform_real_distribution<double> pos(0.1, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const double y = unif(rng);
    const double wt = unif(rng);
    const double g = unif(rng);
    const double a = pos(rng);
    const double theta = pos(rng);
    const double mu = pos(rng);
    const double lambda = pos(rng);
    const Vector got = composite_step_strong(
        Vector{y}, Vector{wt}, Vector{g}, a, theta, mu, Regularizer::l1(lambda),
        FeasibleSet::whole_space());
    const double grid = grid_prox_oracle(
        [&](double x) {
          return a * g * x + a * lambda * std::abs(x) +
                 0.5 * (x - y) * (x - y) +
                 0.5 * (a * mu / theta) * (x - wt) * (x - wt);
        },
        -12.0, 12.0, 1e-4);
    CHECK(std::abs(got[0] - grid) <= 1e-3);
  }
}

TEST_CASE("strong_projection_step properties") {
  Rng rng(91);
  std::uniform_real_distribution<double> pos(0.05, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double a = pos(rng);
    const double theta = pos(rng);
    const double mu = 3.0 * pos(rng);
    const double denom = theta + a * mu;
    CHECK(theta / denom + a * mu / denom == doctest::Approx(1.0));

    const Vector y = random_vector(rng, 4);
    const Vector wt = random_vector(rng, 4);
    const Vector g = random_vector(rng, 4);
    const Vector lhs = strong_projection_step(y, wt, g, a, theta, mu,
                                              FeasibleSet::whole_space());
    const Vector rhs = composite_step_strong(y, wt, g, a, theta, mu,
                                             Regularizer::zero(),
                                             FeasibleSet::whole_space());
    CHECK(distance(lhs, rhs) <= 1e-12);
  }

  // fixed point: g = 0, y = w_t
  const Vector y{0.4, -0.2};
  const Vector out = strong_projection_step(y, y, Vector{0, 0}, 0.5, 0.8, 1.0,
                                            FeasibleSet::whole_space());
  CHECK(distance(out, y) <= 1e-15);
}
