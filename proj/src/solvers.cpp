#include "nsopt/solvers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "nsopt/geometry.hpp"

namespace nsopt {

std::string to_string(SolverTag tag) {
  switch (tag) {
    case SolverTag::psg: return "psg";
    case SolverTag::psg_stochastic: return "psg-stochastic";
    case SolverTag::nesterov_psg: return "nesterov-psg";
    case SolverTag::nesterov_psg_strong: return "nesterov-psg-strong";
    case SolverTag::srsg: return "srsg";
    case SolverTag::srsg_strong: return "srsg-strong";
    case SolverTag::quasi_monotone_da: return "quasi-monotone-da";
    case SolverTag::pa_psg: return "pa-psg";
    case SolverTag::pa_psg_strong: return "pa-psg-strong";
    case SolverTag::pa_psg_regularized: return "pa-psg-regularized";
    case SolverTag::comid: return "comid";
    case SolverTag::pegasos: return "pegasos";
    case SolverTag::smooth_accelerated: return "smooth-accelerated";
  }
  return "unknown";
}

SolverTag solver_tag_from_string(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(SolverTag::smooth_accelerated); ++i) {
    const auto tag = static_cast<SolverTag>(i);
    if (to_string(tag) == name) return tag;
  }
  throw std::invalid_argument("unknown solver tag: " + name);
}

double PaWeights::a(std::size_t t) const {
  if (a_pow == 0.0) return a_scale;
  return a_scale * std::pow(static_cast<double>(t), a_pow);
}

double PaWeights::gamma(std::size_t t) const {
  if (gamma_pow == 0.0) return gamma_scale;
  return gamma_scale * std::pow(static_cast<double>(t + 1), gamma_pow);
}

SolverKind SolverKind::make(SolverTag tag) {
  SolverKind k;
  k.tag = tag;
  switch (tag) {
    case SolverTag::psg:
    case SolverTag::nesterov_psg:
    case SolverTag::nesterov_psg_strong:
    case SolverTag::smooth_accelerated:
      k.deterministic = true;
      break;
    case SolverTag::pa_psg_strong:
      k.pa = PaWeights::strongly_convex();
      break;
    default:
      break;
  }
  return k;
}

bool SolverKind::is_stochastic() const {
  switch (tag) {
    case SolverTag::psg:
    case SolverTag::quasi_monotone_da:
    case SolverTag::smooth_accelerated:
      return false;
    default:
      return !deterministic;
  }
}

bool SolverKind::uses_extrapolation() const {
  switch (tag) {
    case SolverTag::nesterov_psg:
    case SolverTag::nesterov_psg_strong:
    case SolverTag::srsg:
    case SolverTag::srsg_strong:
    case SolverTag::smooth_accelerated:
      return true;
    default:
      return false;
  }
}

Vector extrapolate(const Vector& w_t, const Vector& w_prev, double theta_t,
                   double theta_prev) {
  if (!(theta_prev > 0.0 && theta_prev <= 1.0)) {
    throw std::invalid_argument("extrapolate: theta_prev must be in (0,1]");
  }
  if (!(theta_t > 0.0 && theta_t <= 1.0)) {
    throw std::invalid_argument("extrapolate: theta_t must be in (0,1]");
  }
  require_same_dim(w_t.size(), w_prev.size(), "extrapolate");
  const double coeff = theta_t * (1.0 / theta_prev - 1.0);
  if (coeff == 0.0) return w_t;
  Vector y(w_t.size());
  for (std::size_t i = 0; i < w_t.size(); ++i) {
    y[i] = w_t[i] + coeff * (w_t[i] - w_prev[i]);
  }
  return y;
}

namespace {

Vector draw_subgrad(const Oracle& f, const Vector& at, bool deterministic,
                    Rng* rng) {
  if (deterministic || !f.sample_subgrad) return f.subgrad(at);
  if (rng == nullptr) {
    throw std::invalid_argument("stochastic step needs an rng stream");
  }
  return f.sample_subgrad(at, *rng);
}

void emit(const StepObserver* obs, std::size_t t, double theta,
          double theta_prev, double a, const Vector& y, const Vector& g,
          const Vector& before, const Vector& after) {
  if (obs == nullptr || !*obs) return;
  StepEvent e;
  e.t = t;
  e.theta = theta;
  e.theta_prev = theta_prev;
  e.a = a;
  e.y = &y;
  e.g = &g;
  e.w_before = &before;
  e.w_after = &after;
  (*obs)(e);
}

}  // namespace

void psg_step(SolverState& s, const Oracle& f, double a, const FeasibleSet& set,
              const StepObserver* obs) {
  if (!(a > 0.0)) throw std::invalid_argument("psg_step: a must be > 0");
  const std::size_t k = s.t + 1;
  const Vector g = f.subgrad(s.w_curr);
  Vector w_next = project(set, add_scaled(s.w_curr, -a, g));
  emit(obs, k, 1.0, 1.0, a, s.w_curr, g, s.w_curr, w_next);
  s.advance(std::move(w_next), 1.0);
}

void stochastic_psg_step(SolverState& s, const Oracle& f, double a,
                         const FeasibleSet& set, Rng& rng,
                         const StepObserver* obs) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("stochastic_psg_step: a must be > 0");
  }
  const std::size_t k = s.t + 1;
  const Vector g = draw_subgrad(f, s.w_curr, false, &rng);
  Vector w_next = project(set, add_scaled(s.w_curr, -a, g));
  emit(obs, k, 1.0, 1.0, a, s.w_curr, g, s.w_curr, w_next);
  s.advance(std::move(w_next), 1.0);
}

void nesterov_psg_step(SolverState& s, const Oracle& f,
                       const StepSchedule& sched, const FeasibleSet& set,
                       bool deterministic, Rng* rng, const StepObserver* obs) {
  const std::size_t k = s.t + 1;
  const double theta = sched.theta(k);
  const double a = sched.step(k);
  const Vector y = extrapolate(s.w_curr, s.w_prev, theta, s.theta_curr);
  const Vector g = draw_subgrad(f, y, deterministic, rng);
  Vector w_next = project(set, add_scaled(y, -a, g));
  emit(obs, k, theta, s.theta_curr, a, y, g, s.w_curr, w_next);
  s.advance(std::move(w_next), theta);
}

void nesterov_psg_strong_step(SolverState& s, const Oracle& f,
                              const StepSchedule& sched, const FeasibleSet& set,
                              double mu, bool deterministic, Rng* rng,
                              const StepObserver* obs) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("nesterov_psg_strong_step: mu must be > 0");
  }
  const std::size_t k = s.t + 1;
  const double theta = sched.theta(k);
  const double a = sched.step(k);
  const Vector y = extrapolate(s.w_curr, s.w_prev, theta, s.theta_curr);
  const Vector g = draw_subgrad(f, y, deterministic, rng);
  Vector w_next = strong_projection_step(y, s.w_curr, g, a, theta, mu, set);
  emit(obs, k, theta, s.theta_curr, a, y, g, s.w_curr, w_next);
  s.advance(std::move(w_next), theta);
}

void srsg_step(SolverState& s, const Oracle& f, const Regularizer& r,
               const StepSchedule& sched, const FeasibleSet& set, Rng* rng,
               bool deterministic, const StepObserver* obs) {
  const std::size_t k = s.t + 1;
  const double theta = sched.theta(k);
  const double a = sched.step(k);
  const Vector y = extrapolate(s.w_curr, s.w_prev, theta, s.theta_curr);
  const Vector g = draw_subgrad(f, y, deterministic, rng);
  Vector w_next = composite_step_general(y, g, a, r, set);
  emit(obs, k, theta, s.theta_curr, a, y, g, s.w_curr, w_next);
  s.advance(std::move(w_next), theta);
}

void srsg_strong_step(SolverState& s, const Oracle& f, const Regularizer& r,
                      const StepSchedule& sched, const FeasibleSet& set,
                      double mu, Rng* rng, bool deterministic,
                      const StepObserver* obs) {
  if (!(mu > 0.0)) {
    throw std::invalid_argument("srsg_strong_step: mu must be > 0");
  }
  const std::size_t k = s.t + 1;
  const double theta = sched.theta(k);
  const double a = sched.step(k);
  const Vector y = extrapolate(s.w_curr, s.w_prev, theta, s.theta_curr);
  const Vector g = draw_subgrad(f, y, deterministic, rng);
  Vector w_next = composite_step_strong(y, s.w_curr, g, a, theta, mu, r, set);
  emit(obs, k, theta, s.theta_curr, a, y, g, s.w_curr, w_next);
  s.advance(std::move(w_next), theta);
}

namespace {

PaAux& ensure_pa(SolverState& s) {
  if (!s.pa.has_value()) {
    PaAux aux;
    aux.dual_sum = zeros(s.w_curr.size());
    aux.plus = s.w_curr;
    aux.origin = s.w_curr;
    aux.plus_weighted_sum = zeros(s.w_curr.size());
    s.pa = std::move(aux);
  }
  return *s.pa;
}

/// Interpolation w_{t+1} = (A_t/A_{t+1}) w_t + (a_{t+1}/A_{t+1}) w_t^+,
/// shifted so that the mix producing the new iterate uses weight a(k).
Vector pa_mix(SolverState& s, PaAux& aux, double a_k) {
  const double a_total = aux.weight_total + a_k;
  const double c_old = aux.weight_total / a_total;
  const double c_plus = a_k / a_total;
  Vector w_next(s.w_curr.size());
  for (std::size_t i = 0; i < w_next.size(); ++i) {
    w_next[i] = c_old * s.w_curr[i] + c_plus * aux.plus[i];
  }
  aux.weight_total = a_total;
  axpy(a_k, aux.plus, aux.plus_weighted_sum);
  return w_next;
}

}  // namespace

void quasi_monotone_da_step(SolverState& s, const Oracle& f,
                            const PaWeights& weights, const FeasibleSet& set,
                            const StepObserver* obs) {
  const std::size_t k = s.t + 1;
  PaAux& aux = ensure_pa(s);
  const double gamma = weights.gamma(k - 1);
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("quasi_monotone_da_step: gamma must be > 0");
  }
  // s_{k-1} accumulates the subgradient taken at the current iterate;
  // the first step has an empty dual sum and leaves w at w_0
  Vector g = zeros(s.w_curr.size());
  if (k >= 2) {
    g = f.subgrad(s.w_curr);
    axpy(weights.a(k - 1), g, aux.dual_sum);
  }
  // argmin <s, w> + gamma * 1/2 ||w - w_0||^2 over Q
  Vector plus = aux.origin;
  axpy(-1.0 / gamma, aux.dual_sum, plus);
  aux.plus = project(set, plus);
  Vector w_next = pa_mix(s, aux, weights.a(k));
  emit(obs, k, 1.0, 1.0, weights.a(k), s.w_curr, g, s.w_curr, w_next);
  s.advance(std::move(w_next), 1.0);
}

void pa_psg_step(SolverState& s, const Oracle& f, const PaWeights& weights,
                 const FeasibleSet& set, PaVariant variant, double mu,
                 const Regularizer& r, Rng* rng, bool deterministic,
                 const StepObserver* obs) {
  if (variant == PaVariant::strong && !(mu > 0.0)) {
    throw std::invalid_argument("pa_psg_step: strong variant needs mu > 0");
  }
  const std::size_t k = s.t + 1;
  PaAux& aux = ensure_pa(s);
  // the plus chain runs one index behind the mix: step k updates
  // w_{k-1}^+ from w_{k-2}^+ with (a_{k-1}, gamma_{k-1}) and a subgradient
  // estimate at the current averaged iterate
  const double a_prev = weights.a(k - 1);
  const double gamma_prev = weights.gamma(k - 1);
  if (!(gamma_prev > 0.0)) {
    throw std::invalid_argument("pa_psg_step: gamma must be > 0");
  }
  const Vector g = draw_subgrad(f, s.w_curr, deterministic, rng);
  switch (variant) {
    case PaVariant::plain: {
      Vector v = aux.plus;
      axpy(-a_prev / gamma_prev, g, v);
      aux.plus = project(set, v);
      break;
    }
    case PaVariant::strong: {
      const double denom = gamma_prev + a_prev * mu;
      Vector v(aux.plus.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = (gamma_prev / denom) * aux.plus[i] -
               (a_prev / denom) * (g[i] - mu * s.w_curr[i]);
      }
      aux.plus = project(set, v);
      break;
    }
    case PaVariant::regularized: {
      // Euclidean Bregman prox around the previous plus iterate
      if (a_prev > 0.0) {
        aux.plus = composite_step_general(aux.plus, g, a_prev / gamma_prev, r,
                                          set);
      }
      break;
    }
  }
  Vector w_next = pa_mix(s, aux, weights.a(k));
  emit(obs, k, 1.0, 1.0, weights.a(k), s.w_curr, g, s.w_curr, w_next);
  s.advance(std::move(w_next), 1.0);
}

void comid_step(SolverState& s, const Oracle& f, const Regularizer& r,
                double a, Rng* rng, bool deterministic,
                const StepObserver* obs) {
  if (!(a > 0.0)) throw std::invalid_argument("comid_step: a must be > 0");
  const std::size_t k = s.t + 1;
  const Vector g = draw_subgrad(f, s.w_curr, deterministic, rng);
  Vector w_next =
      composite_step_general(s.w_curr, g, a, r, FeasibleSet::whole_space());
  emit(obs, k, 1.0, 1.0, a, s.w_curr, g, s.w_curr, w_next);
  s.advance(std::move(w_next), 1.0);
}

void smooth_accelerated_step(SolverState& s, const Oracle& f, double l,
                             const FeasibleSet& set, const StepSchedule& sched,
                             const StepObserver* obs) {
  if (!(l > 0.0)) {
    throw std::invalid_argument("smooth_accelerated_step: L must be > 0");
  }
  const std::size_t k = s.t + 1;
  const double theta = sched.theta(k);
  const Vector y = extrapolate(s.w_curr, s.w_prev, theta, s.theta_curr);
  const Vector g = f.subgrad(y);
  Vector w_next = project(set, add_scaled(y, -1.0 / l, g));
  emit(obs, k, theta, s.theta_curr, 1.0 / l, y, g, s.w_curr, w_next);
  s.advance(std::move(w_next), theta);
}

EvalCadence EvalCadence::linear(std::size_t every) {
  if (every < 1) throw std::invalid_argument("EvalCadence: every must be >= 1");
  EvalCadence c;
  c.kind = Kind::linear;
  c.every = every;
  return c;
}

EvalCadence EvalCadence::geometric(double ratio) {
  if (!(ratio > 1.0)) {
    throw std::invalid_argument("EvalCadence: ratio must be > 1");
  }
  EvalCadence c;
  c.kind = Kind::geometric;
  c.ratio = ratio;
  return c;
}

std::vector<std::size_t> EvalCadence::points(std::size_t budget) const {
  std::vector<std::size_t> pts;
  if (budget == 0) return pts;
  if (kind == Kind::linear) {
    for (std::size_t t = every; t <= budget; t += every) pts.push_back(t);
  } else {
    std::size_t t = 1;
    while (t < budget) {
      pts.push_back(t);
      const auto next = static_cast<std::size_t>(
          std::ceil(static_cast<double>(t) * ratio));
      t = std::max(t + 1, next);
    }
  }
  if (pts.empty() || pts.back() != budget) pts.push_back(budget);
  return pts;
}

namespace {

struct RunChecks {
  double mu = 0.0;
  double smooth_l = 0.0;
};

RunChecks validate_run(const SolverKind& kind, const ProblemInstance& problem,
                       const StepSchedule& schedule) {
  RunChecks rc;
  if (problem.dim == 0 || problem.w0.size() != problem.dim) {
    throw std::invalid_argument("run: problem dimension/w0 mismatch");
  }
  if (!problem.loss.value || !problem.loss.subgrad || !problem.objective) {
    throw std::invalid_argument("run: incomplete problem oracle");
  }
  rc.mu = kind.mu > 0.0 ? kind.mu : problem.mu;
  rc.smooth_l = kind.smooth_l > 0.0
                    ? kind.smooth_l
                    : problem.smooth_l.value_or(0.0);
  switch (kind.tag) {
    case SolverTag::nesterov_psg_strong:
    case SolverTag::srsg_strong:
    case SolverTag::pa_psg_strong:
      if (!(rc.mu > 0.0)) {
        throw std::invalid_argument(
            "run: strongly convex solver requires mu > 0");
      }
      break;
    case SolverTag::smooth_accelerated:
      if (!(rc.smooth_l > 0.0)) {
        throw std::invalid_argument("run: smooth baseline requires L > 0");
      }
      break;
    case SolverTag::pegasos:
      if (schedule.kind() != StepSchedule::Kind::pegasos) {
        throw std::invalid_argument("run: pegasos requires its 1/(lambda t) "
                                    "schedule");
      }
      break;
    default:
      break;
  }
  // composite feasibility is checked by the geometry layer on the first
  // step; checking here keeps config errors ahead of any work
  const bool composite = kind.tag == SolverTag::srsg ||
                         kind.tag == SolverTag::srsg_strong ||
                         kind.tag == SolverTag::pa_psg_regularized ||
                         kind.tag == SolverTag::comid;
  if (composite && !problem.reg.is_zero() && !problem.set.is_whole_space()) {
    throw std::invalid_argument(
        "run: nontrivial regularizer with a constrained set is unsupported");
  }
  if (kind.tag == SolverTag::comid && !problem.set.is_whole_space()) {
    throw std::invalid_argument("run: comid requires the whole space");
  }
  if (kind.is_stochastic() && !problem.loss.sample_subgrad) {
    throw std::invalid_argument(
        "run: stochastic mode requires a sampling oracle");
  }
  return rc;
}

}  // namespace

Trace run(const SolverKind& kind, const ProblemInstance& problem,
          const StepSchedule& schedule, const RunOptions& options,
          const StepObserver* observer) {
  const RunChecks rc = validate_run(kind, problem, schedule);
  require_finite(problem.w0, "run: w0");

  SolverState state = SolverState::initial(problem.w0);
  Rng rng(options.seed);
  Vector mean = problem.w0;

  const bool det = kind.deterministic || !kind.is_stochastic();
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed_ns = [&]() -> std::int64_t {
    if (!options.record_walltime) return 0;
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - t_start)
        .count();
  };

  Trace trace;
  auto record = [&](std::size_t t) {
    TraceRow row;
    row.t = t;
    row.f_individual = problem.objective(state.w_curr);
    row.f_averaged = problem.objective(mean);
    const Vector& output =
        kind.output_is_running_mean() ? mean : state.w_curr;
    double nnz = 0.0;
    for (double x : output) {
      if (x != 0.0) nnz += 1.0;
    }
    row.sparsity_pct = 100.0 * nnz / static_cast<double>(output.size());
    row.wall_ns = elapsed_ns();
    if (!std::isfinite(row.f_individual) || !std::isfinite(row.f_averaged)) {
      throw std::runtime_error("run: non-finite objective in trace");
    }
    trace.rows.push_back(row);
  };

  record(0);
  const std::vector<std::size_t> eval_points =
      options.cadence.points(options.budget);
  std::size_t next_eval = 0;

  for (std::size_t k = 1; k <= options.budget; ++k) {
    switch (kind.tag) {
      case SolverTag::psg:
        psg_step(state, problem.loss, schedule.step(k), problem.set, observer);
        break;
      case SolverTag::psg_stochastic:
        if (det) {
          psg_step(state, problem.loss, schedule.step(k), problem.set,
                   observer);
        } else {
          stochastic_psg_step(state, problem.loss, schedule.step(k),
                              problem.set, rng, observer);
        }
        break;
      case SolverTag::pegasos:
        if (det) {
          psg_step(state, problem.loss, schedule.step(k), problem.set,
                   observer);
        } else {
          stochastic_psg_step(state, problem.loss, schedule.step(k),
                              problem.set, rng, observer);
        }
        break;
      case SolverTag::nesterov_psg:
        nesterov_psg_step(state, problem.loss, schedule, problem.set, det,
                          &rng, observer);
        break;
      case SolverTag::nesterov_psg_strong:
        nesterov_psg_strong_step(state, problem.loss, schedule, problem.set,
                                 rc.mu, det, &rng, observer);
        break;
      case SolverTag::srsg:
        srsg_step(state, problem.loss, problem.reg, schedule, problem.set,
                  &rng, det, observer);
        break;
      case SolverTag::srsg_strong:
        srsg_strong_step(state, problem.loss, problem.reg, schedule,
                         problem.set, rc.mu, &rng, det, observer);
        break;
      case SolverTag::quasi_monotone_da:
        quasi_monotone_da_step(state, problem.loss, kind.pa, problem.set,
                               observer);
        break;
      case SolverTag::pa_psg:
        pa_psg_step(state, problem.loss, kind.pa, problem.set,
                    PaVariant::plain, 0.0, problem.reg, &rng, det, observer);
        break;
      case SolverTag::pa_psg_strong:
        pa_psg_step(state, problem.loss, kind.pa, problem.set,
                    PaVariant::strong, rc.mu, problem.reg, &rng, det,
                    observer);
        break;
      case SolverTag::pa_psg_regularized:
        pa_psg_step(state, problem.loss, kind.pa, problem.set,
                    PaVariant::regularized, 0.0, problem.reg, &rng, det,
                    observer);
        break;
      case SolverTag::comid:
        comid_step(state, problem.loss, problem.reg, schedule.step(k), &rng,
                   det, observer);
        break;
      case SolverTag::smooth_accelerated:
        smooth_accelerated_step(state, problem.loss, rc.smooth_l, problem.set,
                                schedule, observer);
        break;
    }
    // uniform running mean of the individual iterates
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < mean.size(); ++i) {
      mean[i] += inv_k * (state.w_curr[i] - mean[i]);
    }
    if (next_eval < eval_points.size() && k == eval_points[next_eval]) {
      record(k);
      ++next_eval;
    }
  }
  return trace;
}

}  // namespace nsopt
