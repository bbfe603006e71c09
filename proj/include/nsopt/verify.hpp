#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nsopt/solvers.hpp"
#include "nsopt/types.hpp"

namespace nsopt {

/// Brute-force argmin of a scalar objective over the grid lo, lo+step, ...
/// Accurate to +-step. Throws when the argmin lands on a boundary point
/// (the bracket was too small).
double grid_prox_oracle(const std::function<double(double)>& objective,
                        double lo, double hi, double step);

/// Per-iteration check of the extrapolation descent inequality
///   a_t [f(y_t) - f(w*)] <= 1/2||w*-y_t||^2 - 1/2||w*-w_{t+1}||^2
///                           + 1/2 a_t^2 M^2
/// for deterministic runs whose subgradient norms are bounded by M over Q.
class DescentBoundMonitor {
 public:
  DescentBoundMonitor(Vector wstar, double m,
                std::function<double(const Vector&)> f_value);

  void operator()(const StepEvent& e);
  double worst_slack() const { return worst_slack_; }
  std::size_t worst_t() const { return worst_t_; }
  bool pass(double tol = 1e-9) const { return worst_slack_ >= -tol; }
  /// per-iteration slacks, kept only when recording is on
  void record_series(bool on) { record_ = on; }
  const std::vector<double>& slacks() const { return slacks_; }

 private:
  Vector wstar_;
  double m2_;
  std::function<double(const Vector&)> f_;
  double worst_slack_ = std::numeric_limits<double>::infinity();
  std::size_t worst_t_ = 0;
  bool record_ = false;
  std::vector<double> slacks_;
};

/// Averaged PSG bound: at every t,
///   (1/A_t) sum a_k f(w_k) - f(w*)
///     <= (1/A_t) [ 1/2||w_0-w*||^2 + sum (a_k^2/2)||g_k||^2 ].
class AveragedBoundMonitor {
 public:
  AveragedBoundMonitor(Vector wstar, std::function<double(const Vector&)> f_value);

  void operator()(const StepEvent& e);
  double worst_slack() const { return worst_slack_; }
  bool pass(double tol = 1e-9) const { return worst_slack_ >= -tol; }

 private:
  Vector wstar_;
  std::function<double(const Vector&)> f_;
  double fstar_ = 0.0;
  bool started_ = false;
  double weighted_value_sum_ = 0.0;
  double weight_sum_ = 0.0;
  double grad_term_sum_ = 0.0;
  double init_dist_term_ = 0.0;
  double worst_slack_ = std::numeric_limits<double>::infinity();
};

/// Smooth accelerated bound: f(w_t) - f(w*) <= (theta_{t-1}^2 L / 2)
/// ||w* - w_0||^2 at every t.
class SmoothBoundMonitor {
 public:
  SmoothBoundMonitor(Vector wstar, double l,
                     std::function<double(const Vector&)> f_value);

  void operator()(const StepEvent& e);
  double worst_slack() const { return worst_slack_; }
  bool pass(double tol = 1e-9) const { return worst_slack_ >= -tol; }

 private:
  Vector wstar_;
  double l_;
  std::function<double(const Vector&)> f_;
  double fstar_ = 0.0;
  bool started_ = false;
  double init_dist2_ = 0.0;
  double worst_slack_ = std::numeric_limits<double>::infinity();
};

/// Cross-checks the z-sequence transformation: the z_{t+1} produced from
/// (w_t, w_{t+1}, theta_t) must equal the one recomputed from
/// (w_{t+1}, y_{t+1}, theta_{t+1}) at the next step.
class ZIdentityMonitor {
 public:
  void operator()(const StepEvent& e);
  double worst_relative_error() const { return worst_; }
  bool pass(double tol = 1e-9) const { return worst_ <= tol; }

 private:
  bool has_pending_ = false;
  Vector pending_z_;
  double worst_ = 0.0;
};

struct MonitorReport {
  std::string name;
  double worst = 0.0;
  bool pass = false;
};

/// Expectation-level check for stochastic runs: gathers a per-iteration
/// slack series per trial seed and requires the across-trial mean slack to
/// stay above -3 standard errors at every iteration. Returns
/// min_t (mean_t + 3 SE_t); pass when that is >= -tol.
struct StochasticSlackResult {
  double worst_normalized = std::numeric_limits<double>::infinity();
  bool pass = false;
};

StochasticSlackResult stochastic_slack_check(
    const std::function<std::vector<double>(std::uint64_t seed)>& trial_slacks,
    std::size_t trials, double tol = 1e-9);

}  // namespace nsopt
