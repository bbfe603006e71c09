#include "nsopt/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsopt {

double theta_general(std::size_t t) {
  return t <= 1 ? 1.0 : 2.0 / static_cast<double>(t + 1);
}

double step_general(std::size_t t) {
  const double u = static_cast<double>(t + 1);
  return 1.0 / (u * std::sqrt(u));
}

double theta_strong(std::size_t t) {
  if (t < 1) throw std::invalid_argument("theta_strong: t must be >= 1");
  return t <= 7 ? 1.0 : 3.0 / static_cast<double>(t + 1);
}

double step_strong(std::size_t t, double mu) {
  if (t < 1) throw std::invalid_argument("step_strong: t must be >= 1");
  if (!(mu > 0.0)) throw std::invalid_argument("step_strong: mu must be > 0");
  const double u = static_cast<double>(t);
  return 3.0 / (mu * u * u);
}

double theta_fista_next(double theta) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta_fista_next: theta must be in (0,1]");
  }
  const double t2 = theta * theta;
  return 0.5 * (std::sqrt(t2 * t2 + 4.0 * t2) - t2);
}

std::vector<std::size_t> recursion_violations(std::span<const double> thetas,
                                              RecursionVariant variant,
                                              double slack) {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < thetas.size(); ++i) {
    const double prev = thetas[i - 1];
    const double next = thetas[i];
    if (!(prev > 0.0 && prev <= 1.0) || !(next > 0.0 && next <= 1.0)) {
      throw std::invalid_argument(
          "recursion_violations: thetas must lie in (0,1]");
    }
    double lhs = (1.0 - next) / (next * next);
    if (variant == RecursionVariant::strong) lhs += 1.0;  // +theta^2/theta^2
    const double rhs = 1.0 / (prev * prev);
    // slack scales with the magnitude: both sides grow like t^2/4
    if (lhs > rhs + slack * std::max(1.0, rhs)) out.push_back(i);
  }
  return out;
}

StepSchedule StepSchedule::general_convex() {
  return StepSchedule(Kind::general_convex, 0.0);
}

StepSchedule StepSchedule::strongly_convex(double mu) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("StepSchedule::strongly_convex: mu must be > 0");
  }
  return StepSchedule(Kind::strongly_convex, mu);
}

StepSchedule StepSchedule::fista(double l) {
  if (!(l > 0.0)) {
    throw std::invalid_argument("StepSchedule::fista: L must be > 0");
  }
  return StepSchedule(Kind::fista, l);
}

StepSchedule StepSchedule::pegasos(double lambda) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("StepSchedule::pegasos: lambda must be > 0");
  }
  return StepSchedule(Kind::pegasos, lambda);
}

StepSchedule StepSchedule::constant(double a) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("StepSchedule::constant: a must be > 0");
  }
  return StepSchedule(Kind::constant, a);
}

StepSchedule StepSchedule::inverse_sqrt(double c) {
  if (!(c > 0.0)) {
    throw std::invalid_argument("StepSchedule::inverse_sqrt: c must be > 0");
  }
  return StepSchedule(Kind::inverse_sqrt, c);
}

StepSchedule StepSchedule::smooth(double l) {
  if (!(l > 0.0)) {
    throw std::invalid_argument("StepSchedule::smooth: L must be > 0");
  }
  return StepSchedule(Kind::smooth, l);
}

double StepSchedule::theta(std::size_t t) const {
  switch (kind_) {
    case Kind::general_convex:
    case Kind::smooth:
      return theta_general(t);
    case Kind::strongly_convex:
      return t == 0 ? 1.0 : theta_strong(t);
    case Kind::fista: {
      if (fista_cache_.empty()) fista_cache_.push_back(1.0);  // theta_0
      while (fista_cache_.size() <= t) {
        fista_cache_.push_back(theta_fista_next(fista_cache_.back()));
      }
      return fista_cache_[t];
    }
    case Kind::pegasos:
    case Kind::constant:
    case Kind::inverse_sqrt:
      return 1.0;  // no extrapolation
  }
  return 1.0;
}

double StepSchedule::step(std::size_t t) const {
  switch (kind_) {
    case Kind::general_convex:
      return step_general(t);
    case Kind::strongly_convex:
      return step_strong(t, param_);
    case Kind::fista:
    case Kind::smooth:
      return 1.0 / param_;
    case Kind::pegasos:
      if (t < 1) throw std::invalid_argument("pegasos step: t must be >= 1");
      return 1.0 / (param_ * static_cast<double>(t));
    case Kind::constant:
      return param_;
    case Kind::inverse_sqrt:
      return param_ / std::sqrt(static_cast<double>(t + 1));
  }
  return 0.0;
}

RecursionVariant StepSchedule::recursion_variant() const {
  return kind_ == Kind::strongly_convex ? RecursionVariant::strong
                                        : RecursionVariant::general;
}

std::vector<std::size_t> schedule_violations(const StepSchedule& schedule,
                                             std::size_t t_max, double slack) {
  // strong thetas start at t = 1, everything else at t = 0
  const std::size_t t0 =
      schedule.kind() == StepSchedule::Kind::strongly_convex ? 1 : 0;
  std::vector<double> thetas;
  thetas.reserve(t_max - t0 + 1);
  for (std::size_t t = t0; t <= t_max; ++t) thetas.push_back(schedule.theta(t));
  auto idx = recursion_violations(thetas, schedule.recursion_variant(), slack);
  for (auto& i : idx) i += t0;  // back to step indices
  return idx;
}

}  // namespace nsopt
