#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nsopt/config_io.hpp"
#include "nsopt/data.hpp"
#include "nsopt/harness.hpp"
#include "nsopt/schedules.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& output_override,
            bool monitors_flag) {
  nsopt::LoadedExperiment loaded =
      nsopt::load_experiment_json_file(config_path);
  if (!output_override.empty()) {
    loaded.config.output_dir = output_override;
  }
  if (monitors_flag) loaded.config.monitors = true;
  if (loaded.config.output_dir.empty()) {
    loaded.config.output_dir = "nsopt-out";
  }

  const nsopt::ExperimentResult result = nsopt::run_experiment(loaded.config);

  namespace fs = std::filesystem;
  {
    std::ofstream echo(fs::path(loaded.config.output_dir) /
                       "resolved_config.json");
    echo << loaded.resolved_json;
  }
  for (const auto& sr : result.solvers) {
    const auto& last = sr.averaged.rows.back();
    std::printf(
        "%-22s t=%-8zu f_individual=%-12.6g f_averaged=%-12.6g "
        "sparsity=%.2f%%\n",
        sr.name.c_str(), last.t, last.f_individual, last.f_averaged,
        last.sparsity_pct);
  }
  if (!result.monitor_report_json.empty()) {
    std::printf("monitors written to %s/monitors.json\n",
                loaded.config.output_dir.c_str());
  }
  std::printf("results written to %s\n", loaded.config.output_dir.c_str());
  return 0;
}

int cmd_validate_schedule(const std::string& variant, std::size_t t_max,
                          double mu) {
  nsopt::StepSchedule schedule = nsopt::StepSchedule::general_convex();
  if (variant == "general") {
    schedule = nsopt::StepSchedule::general_convex();
  } else if (variant == "strong") {
    schedule = nsopt::StepSchedule::strongly_convex(mu);
  } else if (variant == "fista") {
    schedule = nsopt::StepSchedule::fista();
  } else if (variant == "smooth") {
    schedule = nsopt::StepSchedule::smooth(1.0);
  } else {
    std::fprintf(stderr,
                 "error: variant must be general|strong|fista|smooth\n");
    return 2;
  }
  const auto violations = nsopt::schedule_violations(schedule, t_max);
  if (violations.empty()) {
    std::printf("%s: no violations for t <= %zu\n", variant.c_str(), t_max);
  } else {
    std::printf("%s: %zu violation(s)\n", variant.c_str(), violations.size());
    std::size_t shown = 0;
    for (std::size_t t : violations) {
      std::printf("  transition t=%zu -> t=%zu violates the recursion\n",
                  t - 1, t);
      if (++shown == 20) {
        std::printf("  ... (%zu more)\n", violations.size() - shown);
        break;
      }
    }
  }
  return 0;
}

int cmd_rate_fit(const std::string& csv_path, double fstar, double lo,
                 double hi, const std::string& solver,
                 const std::string& trial) {
  std::ifstream in(csv_path);
  if (!in) {
    std::fprintf(stderr, "error: cannot open %s\n", csv_path.c_str());
    return 2;
  }
  const auto rows = nsopt::read_csv(in);
  std::string use_solver = solver;
  if (use_solver.empty()) {
    for (const auto& r : rows) {
      if (use_solver.empty()) {
        use_solver = r.solver;
      } else if (r.solver != use_solver) {
        std::fprintf(stderr,
                     "error: multiple solvers in file, pick one with "
                     "--solver\n");
        return 2;
      }
    }
  }
  std::vector<double> ts;
  std::vector<double> gaps;
  for (const auto& r : rows) {
    if (r.solver != use_solver || r.trial != trial) continue;
    if (r.row.t == 0) continue;
    ts.push_back(static_cast<double>(r.row.t));
    gaps.push_back(r.row.f_individual - fstar);
  }
  if (ts.empty()) {
    std::fprintf(stderr, "error: no rows for solver=%s trial=%s\n",
                 use_solver.c_str(), trial.c_str());
    return 2;
  }
  const nsopt::RateFit fit = nsopt::rate_fit_series(ts, gaps, lo, hi);
  std::printf("solver=%s trial=%s window=[%g,%g] points=%zu\n",
              use_solver.c_str(), trial.c_str(), lo, hi, fit.points);
  std::printf("slope=%.6f intercept=%.6f r2=%.6f\n", fit.slope, fit.intercept,
              fit.r2);
  return 0;
}

int cmd_parse(const std::string& path, std::size_t dimension,
              bool has_positive_class, double positive_class,
              std::size_t subsample_k, std::uint64_t seed,
              const std::string& out_path) {
  nsopt::ParseOptions opts;
  opts.dimension = dimension;
  if (has_positive_class) opts.positive_class = positive_class;
  nsopt::Dataset ds = nsopt::parse_libsvm_file(path, opts);
  if (subsample_k > 0) {
    ds = nsopt::subsample(ds, subsample_k, seed);
  }
  std::size_t positives = 0;
  for (const auto& row : ds.rows) {
    if (row.label > 0) ++positives;
  }
  std::printf("samples:    %zu\n", ds.size());
  std::printf("dimension:  %zu\n", ds.dimension);
  std::printf("nnz:        %zu (%.2f per row)\n", ds.total_nnz(),
              static_cast<double>(ds.total_nnz()) /
                  static_cast<double>(ds.size()));
  std::printf("labels:     +1 x %zu, -1 x %zu\n", positives,
              ds.size() - positives);
  std::printf("max ||x||:  %.6g\n", ds.max_row_norm());
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    nsopt::write_libsvm(out, ds);
    std::printf("written:    %s\n", out_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonsmooth subgradient optimization benchmark harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;
  bool monitors_flag = false;
  auto* run_cmd = app.add_subcommand("run", "run an experiment config");
  run_cmd->add_option("config", config_path, "JSON experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--output", output_override, "output directory");
  run_cmd->add_flag("--monitors", monitors_flag,
                    "run inequality monitors (deterministic configs only)");

  std::string variant;
  std::size_t t_max = 1000;
  double mu = 1.0;
  auto* val_cmd =
      app.add_subcommand("validate-schedule", "sweep a theta schedule "
                                              "against its recursion");
  val_cmd->add_option("variant", variant, "general|strong|fista|smooth")
      ->required();
  val_cmd->add_option("t_max", t_max, "last step index to check")->required();
  val_cmd->add_option("--mu", mu, "modulus for the strong schedule");

  std::string csv_path;
  double fstar = 0.0;
  std::vector<double> window{1.0, 1e9};
  std::string solver;
  std::string trial = "avg";
  auto* fit_cmd =
      app.add_subcommand("rate-fit", "least squares of log(gap) vs log(t)");
  fit_cmd->add_option("csv", csv_path, "trace CSV")->required();
  fit_cmd->add_option("--fstar", fstar, "optimal value")->required();
  fit_cmd->add_option("--window", window, "t window [lo hi]")
      ->expected(2)
      ->required();
  fit_cmd->add_option("--solver", solver, "solver name (default: only one)");
  fit_cmd->add_option("--trial", trial, "trial column value (default avg)");

  std::string data_path;
  std::size_t dimension = 0;
  double positive_class = 0.0;
  std::size_t subsample_k = 0;
  std::uint64_t seed = 1;
  std::string out_path;
  bool stats = false;
  auto* parse_cmd =
      app.add_subcommand("parse", "parse a LIBSVM file and print stats");
  parse_cmd->add_option("file", data_path, "LIBSVM text (optionally .gz)")
      ->required()
      ->check(CLI::ExistingFile);
  parse_cmd->add_flag("--stats", stats, "print dataset statistics (default)");
  parse_cmd->add_option("--dimension", dimension, "pin the dimension");
  auto* pc = parse_cmd->add_option("--positive-class", positive_class,
                                   "raw label mapped to +1, rest to -1");
  parse_cmd->add_option("--subsample", subsample_k,
                        "keep k rows drawn without replacement");
  parse_cmd->add_option("--seed", seed, "subsample seed");
  parse_cmd->add_option("--out", out_path, "write the result as LIBSVM text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      return cmd_run(config_path, output_override, monitors_flag);
    }
    if (val_cmd->parsed()) {
      return cmd_validate_schedule(variant, t_max, mu);
    }
    if (fit_cmd->parsed()) {
      return cmd_rate_fit(csv_path, fstar, window[0], window[1], solver,
                          trial);
    }
    if (parse_cmd->parsed()) {
      return cmd_parse(data_path, dimension, pc->count() > 0, positive_class,
                       subsample_k, seed, out_path);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
