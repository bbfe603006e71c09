#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nsopt {

/// theta_t = 2/(t+1), clamped to 1 at t = 0 (theta_0 = theta_{-1} = 1).
double theta_general(std::size_t t);

/// a_t = (t+1)^{-3/2}.
double step_general(std::size_t t);

/// Piecewise schedule for the strongly convex regime:
/// theta_t = 1 for t <= 7, 3/(t+1) otherwise. Requires t >= 1.
double theta_strong(std::size_t t);

/// a_t = 3/(mu t^2). Requires t >= 1 and mu > 0.
double step_strong(std::size_t t, double mu);

/// theta' = (sqrt(theta^4 + 4 theta^2) - theta^2)/2, the FISTA update.
/// Satisfies (1-theta')/theta'^2 = 1/theta^2 exactly.
double theta_fista_next(double theta);

enum class RecursionVariant { general, strong };

/// Checks consecutive pairs of a theta sequence against the extrapolation
/// side condition: (1-th')/th'^2 <= 1/th^2 (general) or
/// (1-th'+th'^2)/th'^2 <= 1/th^2 (strong). Returns the positions i >= 1 of
/// every successor thetas[i] whose transition fails beyond `slack`.
std::vector<std::size_t> recursion_violations(std::span<const double> thetas,
                                              RecursionVariant variant,
                                              double slack = 1e-12);

/// A (theta_t, a_t) pair schedule, a pure function of the step index.
class StepSchedule {
 public:
  enum class Kind {
    general_convex,   // theta 2/(t+1), a (t+1)^{-3/2}
    strongly_convex,  // piecewise theta, a 3/(mu t^2)
    fista,            // theta by the FISTA recursion, a 1/L
    pegasos,          // theta 1, a 1/(lambda t)
    constant,         // theta 1, a const
    inverse_sqrt,     // theta 1, a c/sqrt(t+1)
    smooth            // theta 2/(t+1), a 1/L
  };

  static StepSchedule general_convex();
  static StepSchedule strongly_convex(double mu);
  static StepSchedule fista(double l = 1.0);
  static StepSchedule pegasos(double lambda);
  static StepSchedule constant(double a);
  static StepSchedule inverse_sqrt(double c = 1.0);
  static StepSchedule smooth(double l);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }

  /// theta_t; t is the step index the solver is about to execute.
  double theta(std::size_t t) const;
  /// a_t
  double step(std::size_t t) const;

  RecursionVariant recursion_variant() const;

 private:
  StepSchedule(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_ = 0.0;
  // fista thetas are defined by iterating the recursion from theta_0 = 1;
  // cached per schedule copy so theta(t) stays O(1) amortized in run loops.
  mutable std::vector<double> fista_cache_;
};

/// Generates the schedule's thetas for steps 1..t_max and returns the step
/// indices t whose transition (t-1 -> t) violates the side condition.
std::vector<std::size_t> schedule_violations(const StepSchedule& schedule,
                                             std::size_t t_max,
                                             double slack = 1e-12);

}  // namespace nsopt
