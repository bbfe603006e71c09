#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "nsopt/schedules.hpp"
#include "nsopt/types.hpp"

namespace nsopt {

enum class SolverTag {
  psg,
  psg_stochastic,
  nesterov_psg,
  nesterov_psg_strong,
  srsg,
  srsg_strong,
  quasi_monotone_da,
  pa_psg,
  pa_psg_strong,
  pa_psg_regularized,
  comid,
  pegasos,
  smooth_accelerated
};

std::string to_string(SolverTag tag);
SolverTag solver_tag_from_string(const std::string& name);

/// Weight sequences for the DA/PA families:
///   a_t     = a_scale * t^a_pow          (t >= 1)
///   gamma_t = gamma_scale * (t+1)^gamma_pow
/// Defaults are the general convex choice a_t = 1, gamma_t = sqrt(t+1);
/// the strongly convex preset uses a_t = t, gamma_t = 1.
struct PaWeights {
  double a_scale = 1.0;
  double a_pow = 0.0;
  double gamma_scale = 1.0;
  double gamma_pow = 0.5;

  double a(std::size_t t) const;
  double gamma(std::size_t t) const;

  static PaWeights general_convex() { return {}; }
  static PaWeights strongly_convex() { return {1.0, 1.0, 1.0, 0.0}; }
};

struct SolverKind {
  SolverTag tag = SolverTag::psg;
  /// Full subgradients instead of sampled estimates.
  bool deterministic = false;
  /// Strong convexity modulus; 0 means take the problem's.
  double mu = 0.0;
  /// Smoothness constant for the accelerated baseline; 0 means the problem's.
  double smooth_l = 0.0;
  PaWeights pa;

  static SolverKind make(SolverTag tag);
  bool is_stochastic() const;
  bool uses_extrapolation() const;
  /// PA-family selects its own averaged iterate as the designated output;
  /// COMID's output is the uniform running mean.
  bool output_is_running_mean() const { return tag == SolverTag::comid; }
};

/// y = w_t + theta_t (1/theta_prev - 1)(w_t - w_{t-1}).
Vector extrapolate(const Vector& w_t, const Vector& w_prev, double theta_t,
                   double theta_prev);

/// Everything a step did, for inequality monitors and tests.
struct StepEvent {
  std::size_t t = 0;        // step index just executed
  double theta = 1.0;       // theta_t used by this step
  double theta_prev = 1.0;  // theta_{t-1}
  double a = 0.0;           // a_t used by this step (0 when n/a)
  const Vector* y = nullptr;        // point the (sub)gradient was taken at
  const Vector* g = nullptr;        // (sub)gradient used
  const Vector* w_before = nullptr; // iterate before the step
  const Vector* w_after = nullptr;  // iterate after the step
};

using StepObserver = std::function<void(const StepEvent&)>;

/// One-step transitions. Each advances the state by a single step with
/// index t+1 and, when given, reports a StepEvent. `rng` may be null for
/// deterministic oracles.

void psg_step(SolverState& s, const Oracle& f, double a, const FeasibleSet& set,
              const StepObserver* obs = nullptr);

void stochastic_psg_step(SolverState& s, const Oracle& f, double a,
                         const FeasibleSet& set, Rng& rng,
                         const StepObserver* obs = nullptr);

void nesterov_psg_step(SolverState& s, const Oracle& f,
                       const StepSchedule& sched, const FeasibleSet& set,
                       bool deterministic = true, Rng* rng = nullptr,
                       const StepObserver* obs = nullptr);

void nesterov_psg_strong_step(SolverState& s, const Oracle& f,
                              const StepSchedule& sched, const FeasibleSet& set,
                              double mu, bool deterministic = true,
                              Rng* rng = nullptr,
                              const StepObserver* obs = nullptr);

void srsg_step(SolverState& s, const Oracle& f, const Regularizer& r,
               const StepSchedule& sched, const FeasibleSet& set, Rng* rng,
               bool deterministic = false, const StepObserver* obs = nullptr);

void srsg_strong_step(SolverState& s, const Oracle& f, const Regularizer& r,
                      const StepSchedule& sched, const FeasibleSet& set,
                      double mu, Rng* rng, bool deterministic = false,
                      const StepObserver* obs = nullptr);

void quasi_monotone_da_step(SolverState& s, const Oracle& f,
                            const PaWeights& weights, const FeasibleSet& set,
                            const StepObserver* obs = nullptr);

enum class PaVariant { plain, strong, regularized };

void pa_psg_step(SolverState& s, const Oracle& f, const PaWeights& weights,
                 const FeasibleSet& set, PaVariant variant, double mu,
                 const Regularizer& r, Rng* rng, bool deterministic = false,
                 const StepObserver* obs = nullptr);

void comid_step(SolverState& s, const Oracle& f, const Regularizer& r,
                double a, Rng* rng, bool deterministic = false,
                const StepObserver* obs = nullptr);

void smooth_accelerated_step(SolverState& s, const Oracle& f, double l,
                             const FeasibleSet& set, const StepSchedule& sched,
                             const StepObserver* obs = nullptr);

struct EvalCadence {
  enum class Kind { linear, geometric };
  Kind kind = Kind::geometric;
  std::size_t every = 1;  // linear: evaluate at multiples of `every`
  double ratio = 2.0;     // geometric: t = 1, then ceil(t * ratio), ...

  static EvalCadence linear(std::size_t every);
  static EvalCadence geometric(double ratio = 2.0);
  /// Evaluation points in (0, budget], always including budget.
  std::vector<std::size_t> points(std::size_t budget) const;
};

struct RunOptions {
  std::size_t budget = 0;
  EvalCadence cadence;
  std::uint64_t seed = 0;
  bool record_walltime = true;
};

/// Runs `budget` steps of the chosen solver, recording the full objective
/// at the individual iterate and at the uniform running mean, the output
/// iterate's exact-nonzero percentage, and elapsed wall time. Deterministic
/// given the seed. Configuration inconsistencies throw before the first
/// iteration.
Trace run(const SolverKind& kind, const ProblemInstance& problem,
          const StepSchedule& schedule, const RunOptions& options,
          const StepObserver* observer = nullptr);

}  // namespace nsopt
