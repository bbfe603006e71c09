#include "nsopt/verify.hpp"

#include <cmath>
#include <stdexcept>

namespace nsopt {

double grid_prox_oracle(const std::function<double(double)>& objective,
                        double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi > lo)) {
    throw std::invalid_argument("grid_prox_oracle: bad bracket or step");
  }
  double best_x = lo;
  double best_v = objective(lo);
  std::size_t best_i = 0;
  std::size_t i = 0;
  for (double x = lo; x <= hi + 0.5 * step; x += step, ++i) {
    const double v = objective(x);
    if (v < best_v) {
      best_v = v;
      best_x = x;
      best_i = i;
    }
  }
  const std::size_t last = i - 1;
  if (best_i == 0 || best_i == last) {
    throw std::runtime_error(
        "grid_prox_oracle: argmin on the bracket boundary, widen [lo, hi]");
  }
  return best_x;
}

DescentBoundMonitor::DescentBoundMonitor(Vector wstar, double m,
                             std::function<double(const Vector&)> f_value)
    : wstar_(std::move(wstar)), m2_(m * m), f_(std::move(f_value)) {
  if (!(m > 0.0)) throw std::invalid_argument("DescentBoundMonitor: M must be > 0");
}

void DescentBoundMonitor::operator()(const StepEvent& e) {
  if (e.a <= 0.0 || e.y == nullptr || e.w_after == nullptr) return;
  const double d_y = distance(wstar_, *e.y);
  const double d_next = distance(wstar_, *e.w_after);
  const double lhs = e.a * (f_(*e.y) - f_(wstar_));
  const double rhs =
      0.5 * d_y * d_y - 0.5 * d_next * d_next + 0.5 * e.a * e.a * m2_;
  const double slack = rhs - lhs;
  if (record_) slacks_.push_back(slack);
  if (slack < worst_slack_) {
    worst_slack_ = slack;
    worst_t_ = e.t;
  }
}

AveragedBoundMonitor::AveragedBoundMonitor(Vector wstar, std::function<double(const Vector&)> f_value)
    : wstar_(std::move(wstar)), f_(std::move(f_value)) {
  fstar_ = f_(wstar_);
}

void AveragedBoundMonitor::operator()(const StepEvent& e) {
  if (e.a <= 0.0 || e.y == nullptr || e.g == nullptr ||
      e.w_before == nullptr) {
    return;
  }
  if (!started_) {
    const double d0 = distance(*e.w_before, wstar_);
    init_dist_term_ = 0.5 * d0 * d0;
    started_ = true;
  }
  // the PSG telescoping pairs a_k with the pre-step iterate and the
  // subgradient used by the step
  weighted_value_sum_ += e.a * f_(*e.y);
  weight_sum_ += e.a;
  grad_term_sum_ += 0.5 * e.a * e.a * squared_norm(*e.g);
  const double lhs = weighted_value_sum_ / weight_sum_ - fstar_;
  const double rhs = (init_dist_term_ + grad_term_sum_) / weight_sum_;
  const double slack = rhs - lhs;
  if (slack < worst_slack_) worst_slack_ = slack;
}

SmoothBoundMonitor::SmoothBoundMonitor(
    Vector wstar, double l, std::function<double(const Vector&)> f_value)
    : wstar_(std::move(wstar)), l_(l), f_(std::move(f_value)) {
  if (!(l > 0.0)) {
    throw std::invalid_argument("SmoothBoundMonitor: L must be > 0");
  }
  fstar_ = f_(wstar_);
}

void SmoothBoundMonitor::operator()(const StepEvent& e) {
  if (e.w_after == nullptr || e.w_before == nullptr) return;
  if (!started_) {
    const double d0 = distance(wstar_, *e.w_before);
    init_dist2_ = d0 * d0;
    started_ = true;
  }
  const double gap = f_(*e.w_after) - fstar_;
  const double bound = 0.5 * e.theta_prev * e.theta_prev * l_ * init_dist2_;
  const double slack = bound - gap;
  if (slack < worst_slack_) worst_slack_ = slack;
}

void ZIdentityMonitor::operator()(const StepEvent& e) {
  if (e.y == nullptr || e.w_before == nullptr || e.w_after == nullptr) return;
  const double inv_theta = 1.0 / e.theta;
  if (has_pending_) {
    // z from the definition at this step: -(1/th - 1) w_t + (1/th) y_t
    double num2 = 0.0;
    double den2 = 0.0;
    for (std::size_t i = 0; i < pending_z_.size(); ++i) {
      const double z_def =
          -(inv_theta - 1.0) * (*e.w_before)[i] + inv_theta * (*e.y)[i];
      const double d = z_def - pending_z_[i];
      num2 += d * d;
      den2 += pending_z_[i] * pending_z_[i];
    }
    const double rel =
        std::sqrt(num2) / std::max(1.0, std::sqrt(den2));
    if (rel > worst_) worst_ = rel;
  }
  // z from the recursion: -(1/th - 1) w_t + (1/th) w_{t+1}
  pending_z_.resize(e.w_after->size());
  for (std::size_t i = 0; i < pending_z_.size(); ++i) {
    pending_z_[i] =
        -(inv_theta - 1.0) * (*e.w_before)[i] + inv_theta * (*e.w_after)[i];
  }
  has_pending_ = true;
}

StochasticSlackResult stochastic_slack_check(
    const std::function<std::vector<double>(std::uint64_t seed)>& trial_slacks,
    std::size_t trials, double tol) {
  if (trials < 2) {
    throw std::invalid_argument("stochastic_slack_check: need >= 2 trials");
  }
  std::vector<std::vector<double>> series(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    series[i] = trial_slacks(static_cast<std::uint64_t>(i));
    if (series[i].size() != series[0].size()) {
      throw std::runtime_error(
          "stochastic_slack_check: trials disagree on length");
    }
  }
  StochasticSlackResult out;
  const std::size_t n = series[0].size();
  const double inv = 1.0 / static_cast<double>(trials);
  for (std::size_t t = 0; t < n; ++t) {
    double mean = 0.0;
    for (const auto& s : series) mean += s[t];
    mean *= inv;
    double var = 0.0;
    for (const auto& s : series) var += (s[t] - mean) * (s[t] - mean);
    var /= static_cast<double>(trials - 1);
    const double se = std::sqrt(var * inv);
    const double normalized = mean + 3.0 * se;
    if (normalized < out.worst_normalized) out.worst_normalized = normalized;
  }
  out.pass = out.worst_normalized >= -tol;
  return out;
}

}  // namespace nsopt
