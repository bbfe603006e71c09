#include "nsopt/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "nsopt/data.hpp"
#include "nsopt/problems.hpp"

namespace nsopt {

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& why) {
  throw std::runtime_error("config error: " + why);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!known.contains(item.key())) {
      config_fail("unknown key '" + item.key() + "' in " + where);
    }
  }
}

Vector parse_w0(const json& spec, std::size_t dim, const char* fallback) {
  json value = spec.contains("w0") ? spec["w0"] : json(fallback);
  if (value.is_array()) {
    Vector w0 = value.get<Vector>();
    if (w0.size() != dim) config_fail("w0 length does not match dimension");
    return w0;
  }
  const std::string name = value.get<std::string>();
  if (name == "zeros") return zeros(dim);
  if (name == "ones") return Vector(dim, 1.0);
  if (name == "unit") {
    return Vector(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  }
  config_fail("w0 must be zeros|ones|unit or an array");
}

struct BuiltProblem {
  ProblemInstance instance;
  double lambda = 0.0;  // hinge trade-off, 0 for synthetic problems
  json resolved;
};

BuiltProblem build_problem(const json& spec) {
  if (!spec.is_object()) config_fail("'problem' must be an object");
  const std::string type = spec.value("type", "");
  BuiltProblem out;
  json& res = out.resolved;
  res["type"] = type;

  if (type == "hinge-l1" || type == "hinge-svm") {
    reject_unknown_keys(spec,
                        {"type", "dataset", "synthetic", "subsample",
                         "subsample_seed", "lambda", "dimension",
                         "positive_class", "derived"},
                        "problem");
    Dataset ds;
    if (spec.contains("dataset")) {
      ParseOptions opts;
      opts.dimension = spec.value("dimension", 0);
      if (spec.contains("positive_class")) {
        opts.positive_class = spec["positive_class"].get<double>();
      }
      ds = parse_libsvm_file(spec["dataset"].get<std::string>(), opts);
      res["dataset"] = spec["dataset"];
    } else if (spec.contains("synthetic")) {
      const json& syn = spec["synthetic"];
      reject_unknown_keys(syn, {"samples", "dim", "seed"}, "problem.synthetic");
      const std::size_t m = syn.value("samples", 2000);
      const std::size_t dim = syn.value("dim", 123);
      const std::uint64_t seed = syn.value("seed", 7);
      ds = make_synthetic_dataset(m, dim, seed);
      res["synthetic"] = {{"samples", m}, {"dim", dim}, {"seed", seed}};
    } else {
      config_fail("hinge problem needs 'dataset' or 'synthetic'");
    }
    if (spec.contains("subsample")) {
      const std::size_t k = spec["subsample"].get<std::size_t>();
      const std::uint64_t sseed = spec.value("subsample_seed", 1);
      ds = subsample(ds, k, sseed);
      res["subsample"] = k;
      res["subsample_seed"] = sseed;
    }
    double lambda = spec.value("lambda", 0.0);
    if (lambda <= 0.0) {
      if (type == "hinge-svm") {
        lambda = 1.0 / static_cast<double>(ds.size());  // lambda = 1/n
      } else {
        config_fail("hinge-l1 requires lambda > 0");
      }
    }
    const HingeMode mode = type == "hinge-svm" ? HingeMode::l2_svm
                                               : HingeMode::l1_regularized;
    HingeProblem problem(std::move(ds), lambda, mode);
    out.instance = problem.instance();
    out.lambda = lambda;
    res["lambda"] = lambda;
    res["derived"] = {{"samples", problem.size()},
                      {"dimension", problem.dim()},
                      {"mu", problem.mu()}};
    return out;
  }

  if (type == "max-affine") {
    reject_unknown_keys(
        spec,
        {"type", "dimension", "pieces", "mu", "noise_sigma", "seed", "w0",
         "derived"},
        "problem");
    const std::size_t dim = spec.value("dimension", 20);
    const std::size_t pieces = spec.value("pieces", 10);
    const double mu = spec.value("mu", 0.0);
    const double noise = spec.value("noise_sigma", 0.0);
    const std::uint64_t seed = spec.value("seed", 11);
    MaxAffineProblem problem = make_max_affine(dim, pieces, mu, seed, noise);
    out.instance = problem.instance(parse_w0(spec, dim, "unit"));
    res["dimension"] = dim;
    res["pieces"] = pieces;
    res["mu"] = mu;
    res["noise_sigma"] = noise;
    res["seed"] = seed;
    res["derived"] = {{"fstar", problem.fstar()}};
    return out;
  }

  if (type == "quadratic") {
    reject_unknown_keys(spec, {"type", "diag", "w0", "derived"}, "problem");
    Vector diag;
    if (!spec.contains("diag")) config_fail("quadratic requires 'diag'");
    if (spec["diag"].is_array()) {
      diag = spec["diag"].get<Vector>();
    } else {
      const json& d = spec["diag"];
      reject_unknown_keys(d, {"log10_min", "log10_max", "count"},
                          "problem.diag");
      const double lo = d.value("log10_min", -8.0);
      const double hi = d.value("log10_max", 0.0);
      const std::size_t count = d.value("count", 32);
      if (count < 2 || hi <= lo) config_fail("bad diag spec");
      diag.resize(count);
      for (std::size_t i = 0; i < count; ++i) {
        const double e =
            lo + (hi - lo) * static_cast<double>(i) /
                     static_cast<double>(count - 1);
        diag[i] = std::pow(10.0, e);
      }
    }
    DiagonalQuadratic problem(diag);
    out.instance = problem.instance(parse_w0(spec, diag.size(), "ones"));
    res["diag"] = diag;
    res["derived"] = {{"L", problem.smooth_l()}};
    return out;
  }

  config_fail("problem.type must be hinge-l1|hinge-svm|max-affine|quadratic");
}

StepSchedule build_schedule(const json& spec, SolverTag tag,
                            const BuiltProblem& problem, double solver_mu,
                            double solver_l, json& resolved) {
  std::string kind;
  if (spec.is_object() && spec.contains("kind")) {
    kind = spec["kind"].get<std::string>();
  } else {
    switch (tag) {
      case SolverTag::nesterov_psg:
      case SolverTag::srsg:
        kind = "general";
        break;
      case SolverTag::nesterov_psg_strong:
      case SolverTag::srsg_strong:
        kind = "strong";
        break;
      case SolverTag::pegasos:
        kind = "pegasos";
        break;
      case SolverTag::smooth_accelerated:
        kind = "smooth";
        break;
      case SolverTag::quasi_monotone_da:
      case SolverTag::pa_psg:
      case SolverTag::pa_psg_strong:
      case SolverTag::pa_psg_regularized:
        kind = "constant";  // PA/DA steps come from their weight sequences
        break;
      default:
        kind = "inverse-sqrt";
        break;
    }
  }
  auto param = [&](const char* name, double fallback) {
    return spec.is_object() ? spec.value(name, fallback) : fallback;
  };
  resolved["kind"] = kind;
  if (kind == "general") return StepSchedule::general_convex();
  if (kind == "strong") {
    double mu = param("mu", solver_mu > 0.0 ? solver_mu : problem.instance.mu);
    if (!(mu > 0.0)) config_fail("strong schedule requires mu > 0");
    resolved["mu"] = mu;
    return StepSchedule::strongly_convex(mu);
  }
  if (kind == "pegasos") {
    double lambda = param("lambda", problem.lambda);
    if (!(lambda > 0.0)) config_fail("pegasos schedule requires lambda > 0");
    resolved["lambda"] = lambda;
    return StepSchedule::pegasos(lambda);
  }
  if (kind == "constant") {
    const double a = param("a", 1.0);
    resolved["a"] = a;
    return StepSchedule::constant(a);
  }
  if (kind == "inverse-sqrt") {
    const double c = param("c", 1.0);
    resolved["c"] = c;
    return StepSchedule::inverse_sqrt(c);
  }
  if (kind == "smooth" || kind == "fista") {
    double l = param("L", solver_l > 0.0
                              ? solver_l
                              : problem.instance.smooth_l.value_or(0.0));
    if (!(l > 0.0)) config_fail(kind + " schedule requires L > 0");
    resolved["L"] = l;
    return kind == "fista" ? StepSchedule::fista(l) : StepSchedule::smooth(l);
  }
  config_fail("unknown schedule kind '" + kind + "'");
}

}  // namespace

LoadedExperiment load_experiment_json_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    config_fail(std::string("invalid JSON: ") + e.what());
  }
  reject_unknown_keys(root,
                      {"problem", "solvers", "budget", "eval", "trials",
                       "base_seed", "parallel", "record_walltime", "monitors",
                       "output"},
                      "config");
  if (!root.contains("problem")) config_fail("missing 'problem'");
  if (!root.contains("solvers") || !root["solvers"].is_array() ||
      root["solvers"].empty()) {
    config_fail("missing or empty 'solvers'");
  }

  BuiltProblem problem = build_problem(root["problem"]);

  LoadedExperiment out;
  out.config.problem = problem.instance;
  out.config.budget = root.value("budget", 1000);
  out.config.trials = root.value("trials", 10);
  out.config.base_seed = root.value("base_seed", 42);
  out.config.parallel = root.value("parallel", true);
  out.config.record_walltime = root.value("record_walltime", true);
  out.config.monitors = root.value("monitors", false);
  out.config.output_dir = root.value("output", "");

  json eval_res = {{"cadence", "geometric"}, {"ratio", 2.0}};
  if (root.contains("eval")) {
    const json& ev = root["eval"];
    reject_unknown_keys(ev, {"cadence", "ratio", "every"}, "eval");
    const std::string cadence = ev.value("cadence", "geometric");
    if (cadence == "linear") {
      const std::size_t every = ev.value("every", 1);
      out.config.cadence = EvalCadence::linear(every);
      eval_res = {{"cadence", "linear"}, {"every", every}};
    } else if (cadence == "geometric") {
      const double ratio = ev.value("ratio", 2.0);
      out.config.cadence = EvalCadence::geometric(ratio);
      eval_res = {{"cadence", "geometric"}, {"ratio", ratio}};
    } else {
      config_fail("eval.cadence must be linear|geometric");
    }
  } else {
    out.config.cadence = EvalCadence::geometric(2.0);
  }

  json solvers_res = json::array();
  for (const json& s : root["solvers"]) {
    reject_unknown_keys(
        s, {"name", "kind", "schedule", "deterministic", "mu", "L", "pa"},
        "solver");
    if (!s.contains("kind")) config_fail("solver entry missing 'kind'");
    SolverSpec spec;
    spec.kind = SolverKind::make(solver_tag_from_string(s["kind"]));
    spec.name = s.value("name", s["kind"].get<std::string>());
    if (s.contains("deterministic")) {
      spec.kind.deterministic = s["deterministic"].get<bool>();
    }
    spec.kind.mu = s.value("mu", 0.0);
    spec.kind.smooth_l = s.value("L", 0.0);
    if (s.contains("pa")) {
      const json& pa = s["pa"];
      reject_unknown_keys(pa, {"a_scale", "a_pow", "gamma_scale", "gamma_pow"},
                          "solver.pa");
      spec.kind.pa.a_scale = pa.value("a_scale", spec.kind.pa.a_scale);
      spec.kind.pa.a_pow = pa.value("a_pow", spec.kind.pa.a_pow);
      spec.kind.pa.gamma_scale =
          pa.value("gamma_scale", spec.kind.pa.gamma_scale);
      spec.kind.pa.gamma_pow = pa.value("gamma_pow", spec.kind.pa.gamma_pow);
    }
    json sched_res;
    spec.schedule =
        build_schedule(s.contains("schedule") ? s["schedule"] : json(),
                       spec.kind.tag, problem, spec.kind.mu,
                       spec.kind.smooth_l, sched_res);
    json entry = {{"name", spec.name},
                  {"kind", to_string(spec.kind.tag)},
                  {"deterministic", spec.kind.deterministic},
                  {"schedule", sched_res}};
    if (spec.kind.mu > 0.0) entry["mu"] = spec.kind.mu;
    if (spec.kind.smooth_l > 0.0) entry["L"] = spec.kind.smooth_l;
    entry["pa"] = {{"a_scale", spec.kind.pa.a_scale},
                   {"a_pow", spec.kind.pa.a_pow},
                   {"gamma_scale", spec.kind.pa.gamma_scale},
                   {"gamma_pow", spec.kind.pa.gamma_pow}};
    solvers_res.push_back(std::move(entry));
    out.config.solvers.push_back(std::move(spec));
  }

  json resolved = {{"problem", problem.resolved},
                   {"solvers", solvers_res},
                   {"budget", out.config.budget},
                   {"eval", eval_res},
                   {"trials", out.config.trials},
                   {"base_seed", out.config.base_seed},
                   {"parallel", out.config.parallel},
                   {"record_walltime", out.config.record_walltime},
                   {"monitors", out.config.monitors},
                   {"output", out.config.output_dir}};
  out.resolved_json = resolved.dump(2) + "\n";
  return out;
}

LoadedExperiment load_experiment_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_fail("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_experiment_json_text(ss.str());
}

}  // namespace nsopt
