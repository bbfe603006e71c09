#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nsopt/solvers.hpp"
#include "nsopt/types.hpp"

namespace nsopt {

/// 100 * |{j : w_j != 0 exactly}| / N
double sparsity_pct(const Vector& w);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of log(f_individual - fstar) against log(t) over
/// evaluation points with t in [t_lo, t_hi]. Nonpositive gaps are dropped;
/// fewer than 10 surviving points is an error.
RateFit rate_fit(const Trace& trace, double fstar, double t_lo, double t_hi);
RateFit rate_fit_series(const std::vector<double>& ts,
                        const std::vector<double>& gaps, double t_lo,
                        double t_hi);

struct SolverSpec {
  std::string name;
  SolverKind kind;
  StepSchedule schedule = StepSchedule::general_convex();
};

struct ExperimentConfig {
  ProblemInstance problem;
  std::vector<SolverSpec> solvers;
  std::size_t budget = 1;
  EvalCadence cadence;
  std::size_t trials = 10;  // the ten-trial protocol
  std::uint64_t base_seed = 42;
  bool parallel = true;
  bool record_walltime = true;
  bool monitors = false;
  /// pass threshold for the inequality monitors (worst slack >= -tol)
  double monitor_tol = 1e-9;
  std::string output_dir;  // empty: keep results in memory only
};

struct SolverResult {
  std::string name;
  std::vector<Trace> per_trial;
  Trace averaged;
};

struct ExperimentResult {
  std::vector<SolverResult> solvers;
  std::string monitor_report_json;  // empty unless monitors ran
};

/// Runs every solver for `trials` independent runs with seeds
/// base_seed + trial, averages traces pointwise, and (when an output
/// directory is set) writes trials.csv, averaged.csv and monitors.json.
/// Output is deterministic given the config, also under parallel trials.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Flat CSV schema: solver,trial,t,f_individual,f_averaged,sparsity_pct,wall_ns
/// with trial = "avg" for averaged rows. Numbers print with 17 significant
/// digits so a decimal round trip is exact.
void write_csv(std::ostream& out, const std::vector<SolverResult>& results,
               bool averaged_only);

struct CsvRow {
  std::string solver;
  std::string trial;
  TraceRow row;
};

std::vector<CsvRow> read_csv(std::istream& in);

}  // namespace nsopt
