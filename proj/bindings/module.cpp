#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nsopt/config_io.hpp"
#include "nsopt/data.hpp"
#include "nsopt/geometry.hpp"
#include "nsopt/harness.hpp"
#include "nsopt/problems.hpp"
#include "nsopt/schedules.hpp"
#include "nsopt/verify.hpp"

namespace py = pybind11;

namespace {

nsopt::Regularizer make_regularizer(const std::string& kind, double lambda) {
  if (kind == "zero") return nsopt::Regularizer::zero();
  if (kind == "l1") return nsopt::Regularizer::l1(lambda);
  if (kind == "squared-l2") return nsopt::Regularizer::squared_l2(lambda);
  throw std::invalid_argument("regularizer kind must be zero|l1|squared-l2");
}

nsopt::FeasibleSet make_set(double ball_radius) {
  return ball_radius > 0.0 ? nsopt::FeasibleSet::l2_ball(ball_radius)
                           : nsopt::FeasibleSet::whole_space();
}

py::list trace_rows(const nsopt::Trace& trace) {
  py::list rows;
  for (const auto& r : trace.rows) {
    py::dict d;
    d["t"] = r.t;
    d["f_individual"] = r.f_individual;
    d["f_averaged"] = r.f_averaged;
    d["sparsity_pct"] = r.sparsity_pct;
    d["wall_ns"] = r.wall_ns;
    rows.append(d);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_nsopt, m) {
  m.doc() = "projected subgradient methods with Nesterov extrapolation";

  // schedules
  m.def("theta_general", &nsopt::theta_general, py::arg("t"));
  m.def("step_general", &nsopt::step_general, py::arg("t"));
  m.def("theta_strong", &nsopt::theta_strong, py::arg("t"));
  m.def("step_strong", &nsopt::step_strong, py::arg("t"), py::arg("mu"));
  m.def("theta_fista_next", &nsopt::theta_fista_next, py::arg("theta"));
  m.def(
      "schedule_violations",
      [](const std::string& variant, std::size_t t_max, double mu) {
        nsopt::StepSchedule s = nsopt::StepSchedule::general_convex();
        if (variant == "strong") {
          s = nsopt::StepSchedule::strongly_convex(mu);
        } else if (variant == "fista") {
          s = nsopt::StepSchedule::fista();
        } else if (variant != "general") {
          throw std::invalid_argument("variant must be general|strong|fista");
        }
        return nsopt::schedule_violations(s, t_max);
      },
      py::arg("variant"), py::arg("t_max"), py::arg("mu") = 1.0);

  // geometry
  m.def(
      "project_l2_ball",
      [](const nsopt::Vector& w, double radius) {
        return nsopt::project(nsopt::FeasibleSet::l2_ball(radius), w);
      },
      py::arg("w"), py::arg("radius"));
  m.def("prox_l1", &nsopt::prox_l1, py::arg("v"), py::arg("tau"));
  m.def(
      "composite_step_general",
      [](const nsopt::Vector& y, const nsopt::Vector& g, double a,
         const std::string& reg, double lambda, double ball_radius) {
        return nsopt::composite_step_general(y, g, a,
                                             make_regularizer(reg, lambda),
                                             make_set(ball_radius));
      },
      py::arg("y"), py::arg("g"), py::arg("a"), py::arg("regularizer") = "zero",
      py::arg("lambda_") = 0.0, py::arg("ball_radius") = 0.0);
  m.def(
      "composite_step_strong",
      [](const nsopt::Vector& y, const nsopt::Vector& w_t,
         const nsopt::Vector& g, double a, double theta, double mu,
         const std::string& reg, double lambda, double ball_radius) {
        return nsopt::composite_step_strong(y, w_t, g, a, theta, mu,
                                            make_regularizer(reg, lambda),
                                            make_set(ball_radius));
      },
      py::arg("y"), py::arg("w_t"), py::arg("g"), py::arg("a"),
      py::arg("theta"), py::arg("mu"), py::arg("regularizer") = "zero",
      py::arg("lambda_") = 0.0, py::arg("ball_radius") = 0.0);
  m.def(
      "strong_projection_step",
      [](const nsopt::Vector& y, const nsopt::Vector& w_t,
         const nsopt::Vector& g, double a, double theta, double mu,
         double ball_radius) {
        return nsopt::strong_projection_step(y, w_t, g, a, theta, mu,
                                             make_set(ball_radius));
      },
      py::arg("y"), py::arg("w_t"), py::arg("g"), py::arg("a"),
      py::arg("theta"), py::arg("mu"), py::arg("ball_radius") = 0.0);
  m.def("extrapolate", &nsopt::extrapolate, py::arg("w_t"), py::arg("w_prev"),
        py::arg("theta_t"), py::arg("theta_prev"));

  // harness
  m.def("sparsity_pct", &nsopt::sparsity_pct, py::arg("w"));
  m.def(
      "rate_fit",
      [](const std::vector<double>& ts, const std::vector<double>& gaps,
         double t_lo, double t_hi) {
        const nsopt::RateFit fit =
            nsopt::rate_fit_series(ts, gaps, t_lo, t_hi);
        py::dict d;
        d["slope"] = fit.slope;
        d["intercept"] = fit.intercept;
        d["r2"] = fit.r2;
        d["points"] = fit.points;
        return d;
      },
      py::arg("ts"), py::arg("gaps"), py::arg("t_lo"), py::arg("t_hi"));

  // experiments: config text in, per-solver traces out
  m.def(
      "run_experiment",
      [](const std::string& config_json) {
        nsopt::LoadedExperiment loaded =
            nsopt::load_experiment_json_text(config_json);
        const nsopt::ExperimentResult result =
            nsopt::run_experiment(loaded.config);
        py::dict out;
        for (const auto& sr : result.solvers) {
          py::dict entry;
          entry["averaged"] = trace_rows(sr.averaged);
          py::list trials;
          for (const auto& tr : sr.per_trial) trials.append(trace_rows(tr));
          entry["trials"] = trials;
          out[py::str(sr.name)] = entry;
        }
        if (!result.monitor_report_json.empty()) {
          out["monitors_json"] = result.monitor_report_json;
        }
        out["resolved_config_json"] = loaded.resolved_json;
        return out;
      },
      py::arg("config_json"));

  // data
  m.def(
      "parse_libsvm",
      [](const std::string& path, std::size_t dimension) {
        nsopt::ParseOptions opts;
        opts.dimension = dimension;
        const nsopt::Dataset ds = nsopt::parse_libsvm_file(path, opts);
        py::dict d;
        d["samples"] = ds.size();
        d["dimension"] = ds.dimension;
        d["nnz"] = ds.total_nnz();
        d["max_row_norm"] = ds.max_row_norm();
        return d;
      },
      py::arg("path"), py::arg("dimension") = 0);
  m.def(
      "parse_libsvm_text",
      [](const std::string& text, std::size_t dimension) {
        nsopt::ParseOptions opts;
        opts.dimension = dimension;
        std::istringstream ss(text);
        const nsopt::Dataset ds = nsopt::parse_libsvm(ss, opts);
        py::dict d;
        d["samples"] = ds.size();
        d["dimension"] = ds.dimension;
        d["nnz"] = ds.total_nnz();
        d["max_row_norm"] = ds.max_row_norm();
        return d;
      },
      py::arg("text"), py::arg("dimension") = 0);
}
