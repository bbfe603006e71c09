#include "nsopt/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace nsopt {

namespace {

void require_supported(const Regularizer& r, const FeasibleSet& set,
                       const char* where) {
  if (!r.is_zero() && !set.is_whole_space()) {
    // simultaneous prox and ball projection has no closed form
    throw std::invalid_argument(std::string(where) +
                                ": nontrivial regularizer requires the "
                                "whole-space feasible set");
  }
}

}  // namespace

Vector project(const FeasibleSet& set, const Vector& w) {
  if (set.is_whole_space()) return w;
  const Vector& c = set.center();
  if (!c.empty()) require_same_dim(c.size(), w.size(), "project");
  double d2 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double d = c.empty() ? w[i] : w[i] - c[i];
    d2 += d * d;
  }
  const double dist = std::sqrt(d2);
  if (dist <= set.radius()) return w;
  const double s = set.radius() / dist;
  Vector out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double ci = c.empty() ? 0.0 : c[i];
    out[i] = ci + s * (w[i] - ci);
  }
  return out;
}

Vector prox_l1(const Vector& v, double tau) {
  if (tau < 0.0) throw std::invalid_argument("prox_l1: tau must be >= 0");
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]) - tau;
    out[i] = a > 0.0 ? (v[i] > 0.0 ? a : -a) : 0.0;
  }
  return out;
}

Vector composite_step_general(const Vector& y, const Vector& g, double a,
                              const Regularizer& r, const FeasibleSet& set) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("composite_step_general: a must be > 0");
  }
  require_same_dim(y.size(), g.size(), "composite_step_general");
  require_supported(r, set, "composite_step_general");
  Vector v = add_scaled(y, -a, g);
  switch (r.kind()) {
    case Regularizer::Kind::zero:
      return project(set, v);
    case Regularizer::Kind::l1:
      return prox_l1(v, a * r.lambda());
    case Regularizer::Kind::squared_l2: {
      const double s = 1.0 / (1.0 + a * r.lambda());
      for (double& x : v) x *= s;
      return v;
    }
  }
  return v;
}

Vector composite_step_strong(const Vector& y, const Vector& w_t,
                             const Vector& g, double a, double theta,
                             double mu, const Regularizer& r,
                             const FeasibleSet& set) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument(
        "composite_step_strong: mu must be > 0 (use the general step)");
  }
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("composite_step_strong: theta must be in (0,1]");
  }
  require_same_dim(y.size(), w_t.size(), "composite_step_strong");
  const double kappa = 1.0 + a * mu / theta;
  const double denom = theta + a * mu;
  Vector c(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    c[i] = (theta * y[i] + a * mu * w_t[i]) / denom;
  }
  return composite_step_general(c, g, a / kappa, r, set);
}

Vector strong_projection_step(const Vector& y, const Vector& w_t,
                              const Vector& g, double a, double theta,
                              double mu, const FeasibleSet& set) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("strong_projection_step: mu must be > 0");
  }
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument(
        "strong_projection_step: theta must be in (0,1]");
  }
  if (!(a > 0.0)) {
    throw std::invalid_argument("strong_projection_step: a must be > 0");
  }
  require_same_dim(y.size(), w_t.size(), "strong_projection_step");
  require_same_dim(y.size(), g.size(), "strong_projection_step");
  const double denom = theta + a * mu;
  const double cy = theta / denom;
  const double cw = a * mu / denom;
  const double cg = a * theta / denom;
  Vector v(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    v[i] = cy * y[i] + cw * w_t[i] - cg * g[i];
  }
  return project(set, v);
}

}  // namespace nsopt
