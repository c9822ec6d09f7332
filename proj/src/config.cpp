#include "bsq/config.hpp"

#include <fstream>

#include "bsq/errors.hpp"

#ifndef BSQ_GIT_REVISION
#define BSQ_GIT_REVISION "unversioned"
#endif

namespace bsq {

using nlohmann::json;

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(std::string("config field '") + key + "': " + e.what());
  }
}

template <class T>
T get_required(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(std::string("config field '") + key + "' is required");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(std::string("config field '") + key + "': " + e.what());
  }
}

json solver_to_json(const SolverConfig& s) {
  return {{"alpha", s.alpha},
          {"beta", s.beta},
          {"nu", s.nu},
          {"kappa", s.kappa},
          {"n", s.n},
          {"dt", s.dt},
          {"horizon", s.horizon},
          {"integrator", to_string(s.integrator)},
          {"cfl_safety", s.cfl_safety},
          {"samples_per_unit_time", s.samples_per_unit_time}};
}

SolverConfig solver_from_json(const json& j) {
  SolverConfig s;
  s.alpha = get_required<Real>(j, "alpha");
  s.beta = get_required<Real>(j, "beta");
  s.nu = get_or<Real>(j, "nu", 1.0);
  s.kappa = get_or<Real>(j, "kappa", 1.0);
  s.n = get_required<int>(j, "n");
  s.dt = get_required<Real>(j, "dt");
  s.horizon = get_required<Real>(j, "horizon");
  s.integrator =
      integrator_from_string(get_or<std::string>(j, "integrator", "etd-rk4"));
  s.cfl_safety = get_or<Real>(j, "cfl_safety", 0.5);
  s.samples_per_unit_time = get_or<int>(j, "samples_per_unit_time", 100);
  return s;
}

json diagnostics_to_json(const DiagnosticsConfig& d) {
  return {{"varrho", d.varrho},
          {"delta", d.delta},
          {"r_list", d.r_list},
          {"s_ref", d.s_ref},
          {"tolerance", d.tolerance}};
}

DiagnosticsConfig diagnostics_from_json(const json& j, Real alpha, Real beta) {
  DiagnosticsConfig d = DiagnosticsConfig::defaults(alpha, beta);
  d.varrho = get_or<Real>(j, "varrho", d.varrho);
  d.delta = get_or<Real>(j, "delta", d.delta);
  d.r_list = get_or<std::vector<Real>>(j, "r_list", d.r_list);
  d.s_ref = get_or<Real>(j, "s_ref", d.s_ref);
  d.tolerance = get_or<Real>(j, "tolerance", d.tolerance);
  return d;
}

}  // namespace

void ExperimentSpec::validate() const {
  solver.validate();
  diagnostics.validate(solver.alpha, solver.beta);
  if (outputs.directory.empty()) throw Error("outputs.directory must be set");
  for (Real t : outputs.snapshot_times) {
    if (t < 0 || t > solver.horizon) {
      throw Error("snapshot time outside [0, horizon]");
    }
  }
}

void SweepSpec::validate() const {
  base.validate();
  if (alpha_grid.empty() != beta_grid.empty()) {
    throw Error("sweep grids must both be empty or both populated");
  }
  for (Real a : alpha_grid) {
    if (!(a > 0 && a < 1)) throw Error("alpha grid values must be in (0, 1)");
  }
  for (Real b : beta_grid) {
    if (!(b > 0 && b < 1)) throw Error("beta grid values must be in (0, 1)");
  }
  if (parallelism < 1) throw Error("parallelism must be >= 1");
  if (!(bounded_log_slope > 0)) throw Error("bounded_log_slope must be > 0");
  if (!(stability_tol > 0)) throw Error("stability_tol must be > 0");
}

json to_json(const ExperimentSpec& spec) {
  return {{"schema_version", spec.schema_version},
          {"label", spec.label},
          {"solver", solver_to_json(spec.solver)},
          {"diagnostics", diagnostics_to_json(spec.diagnostics)},
          {"init",
           [&] {
             json init = {{"kind", to_string(spec.init.kind)},
                          {"seed", spec.init.seed},
                          {"amplitude", spec.init.amplitude}};
             if (!spec.init.snapshot_path.empty()) {
               init["snapshot"] = spec.init.snapshot_path;
             }
             return init;
           }()},
          {"outputs",
           {{"directory", spec.outputs.directory},
            {"snapshot_times", spec.outputs.snapshot_times}}}};
}

ExperimentSpec experiment_from_json(const json& j) {
  ExperimentSpec spec;
  spec.schema_version = get_or<int>(j, "schema_version", 1);
  if (spec.schema_version != 1) {
    throw Error("unsupported schema_version " +
                std::to_string(spec.schema_version));
  }
  spec.label = get_or<std::string>(j, "label", "experiment");
  if (!j.contains("solver")) throw Error("config field 'solver' is required");
  spec.solver = solver_from_json(j.at("solver"));
  if (j.contains("diagnostics")) {
    spec.diagnostics = diagnostics_from_json(j.at("diagnostics"),
                                             spec.solver.alpha,
                                             spec.solver.beta);
    spec.diagnostics_explicit = true;
  } else {
    spec.diagnostics =
        DiagnosticsConfig::defaults(spec.solver.alpha, spec.solver.beta);
  }
  if (j.contains("init")) {
    const json& i = j.at("init");
    spec.init.kind =
        init_kind_from_string(get_or<std::string>(i, "kind", "random_smooth"));
    spec.init.seed = get_or<std::uint64_t>(i, "seed", 1);
    spec.init.amplitude = get_or<Real>(i, "amplitude", 1.0);
    spec.init.snapshot_path = get_or<std::string>(i, "snapshot", "");
  }
  if (j.contains("outputs")) {
    const json& o = j.at("outputs");
    spec.outputs.directory = get_or<std::string>(o, "directory", "out");
    spec.outputs.snapshot_times =
        get_or<std::vector<Real>>(o, "snapshot_times", {});
  }
  spec.validate();
  return spec;
}

json to_json(const SweepSpec& spec) {
  return {{"schema_version", spec.schema_version},
          {"alpha_grid", spec.alpha_grid},
          {"beta_grid", spec.beta_grid},
          {"base", to_json(spec.base)},
          {"parallelism", spec.parallelism},
          {"stability_check", spec.stability_check},
          {"bounded_log_slope", spec.bounded_log_slope},
          {"stability_tol", spec.stability_tol}};
}

SweepSpec sweep_from_json(const json& j) {
  SweepSpec spec;
  spec.schema_version = get_or<int>(j, "schema_version", 1);
  if (spec.schema_version != 1) {
    throw Error("unsupported schema_version " +
                std::to_string(spec.schema_version));
  }
  spec.alpha_grid = get_required<std::vector<Real>>(j, "alpha_grid");
  spec.beta_grid = get_required<std::vector<Real>>(j, "beta_grid");
  if (!j.contains("base")) throw Error("config field 'base' is required");
  spec.base = experiment_from_json(j.at("base"));
  spec.parallelism = get_or<int>(j, "parallelism", 1);
  spec.stability_check = get_or<bool>(j, "stability_check", true);
  spec.bounded_log_slope = get_or<Real>(j, "bounded_log_slope", 0.5);
  spec.stability_tol = get_or<Real>(j, "stability_tol", 0.1);
  spec.validate();
  return spec;
}

namespace {

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error("config " + path + " is not valid JSON");
  return j;
}

}  // namespace

ExperimentSpec load_experiment(const std::string& path) {
  return experiment_from_json(parse_file(path));
}

SweepSpec load_sweep(const std::string& path) {
  return sweep_from_json(parse_file(path));
}

std::string version_string() { return std::string("bsq ") + BSQ_GIT_REVISION; }

}  // namespace bsq
