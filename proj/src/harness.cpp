#include "nsopt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "nsopt/verify.hpp"

namespace nsopt {

double sparsity_pct(const Vector& w) {
  if (w.empty()) return 0.0;
  double nnz = 0.0;
  for (double x : w) {
    if (x != 0.0) nnz += 1.0;
  }
  return 100.0 * nnz / static_cast<double>(w.size());
}

RateFit rate_fit_series(const std::vector<double>& ts,
                        const std::vector<double>& gaps, double t_lo,
                        double t_hi) {
  if (ts.size() != gaps.size()) {
    throw std::invalid_argument("rate_fit: series length mismatch");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i] < t_lo || ts[i] > t_hi || ts[i] <= 0.0) continue;
    if (!(gaps[i] > 0.0)) continue;  // nonpositive gaps are dropped
    xs.push_back(std::log(ts[i]));
    ys.push_back(std::log(gaps[i]));
  }
  if (xs.size() < 10) {
    throw std::runtime_error(
        "rate_fit: fewer than 10 usable evaluation points in the window");
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::runtime_error("rate_fit: degenerate t window");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.points = xs.size();
  return fit;
}

RateFit rate_fit(const Trace& trace, double fstar, double t_lo, double t_hi) {
  std::vector<double> ts;
  std::vector<double> gaps;
  ts.reserve(trace.rows.size());
  gaps.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    if (row.t == 0) continue;
    ts.push_back(static_cast<double>(row.t));
    gaps.push_back(row.f_individual - fstar);
  }
  return rate_fit_series(ts, gaps, t_lo, t_hi);
}

namespace {

Trace average_traces(const std::vector<Trace>& traces) {
  Trace avg;
  if (traces.empty()) return avg;
  const std::size_t rows = traces.front().rows.size();
  for (const auto& tr : traces) {
    if (tr.rows.size() != rows) {
      throw std::runtime_error("averaging: trials disagree on eval points");
    }
  }
  const double inv = 1.0 / static_cast<double>(traces.size());
  avg.rows.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    TraceRow& out = avg.rows[i];
    out.t = traces.front().rows[i].t;
    std::int64_t wall = 0;
    for (const auto& tr : traces) {
      const TraceRow& r = tr.rows[i];
      if (r.t != out.t) {
        throw std::runtime_error("averaging: trials disagree on eval points");
      }
      out.f_individual += r.f_individual;
      out.f_averaged += r.f_averaged;
      out.sparsity_pct += r.sparsity_pct;
      wall += r.wall_ns;
    }
    out.f_individual *= inv;
    out.f_averaged *= inv;
    out.sparsity_pct *= inv;
    out.wall_ns = wall / static_cast<std::int64_t>(traces.size());
  }
  return avg;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Monitors run on one dedicated deterministic pass per solver.
std::string run_monitors(const ExperimentConfig& config) {
  nlohmann::json report = nlohmann::json::object();
  for (const auto& spec : config.solvers) {
    if (spec.kind.is_stochastic()) {
      throw std::invalid_argument(
          "monitors: solver '" + spec.name +
          "' is stochastic; monitors run in deterministic mode only");
    }
    if (!config.problem.wstar.has_value()) {
      throw std::invalid_argument(
          "monitors: problem does not expose a known optimum");
    }
    const Vector& wstar = *config.problem.wstar;
    std::vector<MonitorReport> reports;

    const bool descent_applies = spec.kind.tag == SolverTag::psg ||
                                spec.kind.tag == SolverTag::psg_stochastic ||
                                spec.kind.tag == SolverTag::pegasos ||
                                spec.kind.tag == SolverTag::nesterov_psg ||
                                (spec.kind.tag == SolverTag::srsg &&
                                 config.problem.reg.is_zero());
    std::optional<DescentBoundMonitor> descent;
    if (descent_applies && config.problem.lipschitz_m.has_value()) {
      descent.emplace(wstar, *config.problem.lipschitz_m,
                     config.problem.loss.value);
    }
    std::optional<AveragedBoundMonitor> averaged;
    if (spec.kind.tag == SolverTag::psg ||
        spec.kind.tag == SolverTag::psg_stochastic) {
      averaged.emplace(wstar, config.problem.loss.value);
    }
    std::optional<SmoothBoundMonitor> smooth;
    if (spec.kind.tag == SolverTag::smooth_accelerated) {
      const double l = spec.kind.smooth_l > 0.0
                           ? spec.kind.smooth_l
                           : config.problem.smooth_l.value_or(0.0);
      smooth.emplace(wstar, l, config.problem.loss.value);
    }
    std::optional<ZIdentityMonitor> zid;
    if (spec.kind.uses_extrapolation()) zid.emplace();

    StepObserver obs = [&](const StepEvent& e) {
      if (descent) (*descent)(e);
      if (averaged) (*averaged)(e);
      if (smooth) (*smooth)(e);
      if (zid) (*zid)(e);
    };
    RunOptions opts;
    opts.budget = config.budget;
    opts.cadence = config.cadence;
    opts.seed = config.base_seed;
    opts.record_walltime = false;
    run(spec.kind, config.problem, spec.schedule, opts, &obs);

    const double tol = config.monitor_tol;
    if (descent) {
      reports.push_back({"descent_bound_slack", descent->worst_slack(),
                         descent->pass(tol)});
    }
    if (averaged) {
      reports.push_back({"averaged_bound_slack", averaged->worst_slack(),
                         averaged->pass(tol)});
    }
    if (smooth) {
      reports.push_back({"smooth_bound_slack", smooth->worst_slack(),
                         smooth->pass(tol)});
    }
    if (zid) {
      reports.push_back({"z_identity_rel_err", zid->worst_relative_error(),
                         zid->pass(tol)});
    }

    nlohmann::json entry = nlohmann::json::object();
    for (const auto& r : reports) {
      entry[r.name] = {{"worst", r.worst}, {"pass", r.pass}};
    }
    report[spec.name] = std::move(entry);
  }
  return report.dump(2) + "\n";
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  if (config.trials < 1) {
    throw std::invalid_argument("run_experiment: trials must be >= 1");
  }
  if (config.budget < 1) {
    throw std::invalid_argument("run_experiment: budget must be >= 1");
  }
  if (config.solvers.empty()) {
    throw std::invalid_argument("run_experiment: no solvers configured");
  }
  for (std::size_t i = 0; i < config.solvers.size(); ++i) {
    for (std::size_t j = i + 1; j < config.solvers.size(); ++j) {
      if (config.solvers[i].name == config.solvers[j].name) {
        throw std::invalid_argument("run_experiment: duplicate solver name '" +
                                    config.solvers[i].name + "'");
      }
    }
  }

  ExperimentResult result;
  for (const auto& spec : config.solvers) {
    // fail on config inconsistencies before any work starts
    RunOptions probe;
    probe.budget = 0;
    probe.cadence = config.cadence;
    probe.seed = config.base_seed;
    probe.record_walltime = false;
    run(spec.kind, config.problem, spec.schedule, probe, nullptr);
  }

  for (const auto& spec : config.solvers) {
    SolverResult sr;
    sr.name = spec.name;
    sr.per_trial.resize(config.trials);
    auto run_trial = [&](std::size_t trial) {
      RunOptions opts;
      opts.budget = config.budget;
      opts.cadence = config.cadence;
      opts.seed = config.base_seed + trial;
      opts.record_walltime = config.record_walltime;
      sr.per_trial[trial] =
          run(spec.kind, config.problem, spec.schedule, opts, nullptr);
    };
    if (config.parallel && config.trials > 1) {
      std::vector<std::future<void>> futs;
      futs.reserve(config.trials);
      for (std::size_t trial = 0; trial < config.trials; ++trial) {
        futs.push_back(
            std::async(std::launch::async, run_trial, trial));
      }
      for (auto& f : futs) f.get();
    } else {
      for (std::size_t trial = 0; trial < config.trials; ++trial) {
        run_trial(trial);
      }
    }
    sr.averaged = average_traces(sr.per_trial);
    result.solvers.push_back(std::move(sr));
  }

  if (config.monitors) {
    result.monitor_report_json = run_monitors(config);
  }

  if (!config.output_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(config.output_dir);
    {
      std::ofstream out(fs::path(config.output_dir) / "trials.csv");
      write_csv(out, result.solvers, false);
    }
    {
      std::ofstream out(fs::path(config.output_dir) / "averaged.csv");
      write_csv(out, result.solvers, true);
    }
    if (!result.monitor_report_json.empty()) {
      std::ofstream out(fs::path(config.output_dir) / "monitors.json");
      out << result.monitor_report_json;
    }
  }
  return result;
}

void write_csv(std::ostream& out, const std::vector<SolverResult>& results,
               bool averaged_only) {
  out << "solver,trial,t,f_individual,f_averaged,sparsity_pct,wall_ns\n";
  auto emit_row = [&](const std::string& solver, const std::string& trial,
                      const TraceRow& r) {
    out << solver << ',' << trial << ',' << r.t << ',' << fmt17(r.f_individual)
        << ',' << fmt17(r.f_averaged) << ',' << fmt17(r.sparsity_pct) << ','
        << r.wall_ns << '\n';
  };
  for (const auto& sr : results) {
    if (!averaged_only) {
      for (std::size_t trial = 0; trial < sr.per_trial.size(); ++trial) {
        for (const auto& r : sr.per_trial[trial].rows) {
          emit_row(sr.name, std::to_string(trial), r);
        }
      }
    }
    for (const auto& r : sr.averaged.rows) {
      emit_row(sr.name, "avg", r);
    }
  }
}

std::vector<CsvRow> read_csv(std::istream& in) {
  std::vector<CsvRow> rows;
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("csv: empty input");
  }
  if (line.rfind("solver,trial,t,", 0) != 0) {
    throw std::runtime_error("csv: unexpected header: " + line);
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    CsvRow row;
    auto next = [&](const char* what) {
      if (!std::getline(ss, field, ',')) {
        throw std::runtime_error("csv line " + std::to_string(line_no) +
                                 ": missing field " + what);
      }
      return field;
    };
    row.solver = next("solver");
    row.trial = next("trial");
    row.row.t = std::stoul(next("t"));
    row.row.f_individual = std::stod(next("f_individual"));
    row.row.f_averaged = std::stod(next("f_averaged"));
    row.row.sparsity_pct = std::stod(next("sparsity_pct"));
    row.row.wall_ns = std::stoll(next("wall_ns"));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nsopt
