#pragma once

#include "nsopt/types.hpp"

namespace nsopt {

/// Euclidean projection onto Q. Whole space is the identity.
Vector project(const FeasibleSet& set, const Vector& w);

/// Componentwise soft threshold: sign(v) * max(|v| - tau, 0).
Vector prox_l1(const Vector& v, double tau);

/// Exact minimizer of  a<g,w> + a r(w) + 1/2 ||w - y||^2  over Q.
///
/// Supported combinations: (r = zero, any Q) or (r in {l1, squared_l2},
/// Q = whole space). Anything else has no closed form and throws.
Vector composite_step_general(const Vector& y, const Vector& g, double a,
                              const Regularizer& r, const FeasibleSet& set);

/// Exact minimizer of
///   a<g,w> + a r(w) + 1/2 ||w - y||^2 + (a mu / 2 theta) ||w - w_t||^2
/// via completing the square: with kappa = 1 + a mu/theta and
/// c = (theta y + a mu w_t)/(theta + a mu) the subproblem reduces to the
/// general composite step at (c, a/kappa).
Vector composite_step_strong(const Vector& y, const Vector& w_t,
                             const Vector& g, double a, double theta,
                             double mu, const Regularizer& r,
                             const FeasibleSet& set);

/// The strongly convex projected step
///   P[ theta/(theta+a mu) y + a mu/(theta+a mu) w_t
///      - a theta/(theta+a mu) g ].
/// Equivalent to composite_step_strong with r = zero.
Vector strong_projection_step(const Vector& y, const Vector& w_t,
                              const Vector& g, double a, double theta,
                              double mu, const FeasibleSet& set);

}  // namespace nsopt
