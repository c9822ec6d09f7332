#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bsq/diagnostics.hpp"
#include "bsq/solver.hpp"

namespace bsq {

struct InitSpec {
  InitKind kind = InitKind::RandomSmooth;
  std::uint64_t seed = 1;
  Real amplitude = 1.0;
  std::string snapshot_path;  // non-empty: restart from a .bsq file instead
};

struct OutputSpec {
  std::string directory = "out";
  std::vector<Real> snapshot_times;
};

struct ExperimentSpec {
  int schema_version = 1;
  std::string label = "experiment";
  SolverConfig solver;
  DiagnosticsConfig diagnostics;
  bool diagnostics_explicit = false;  // false -> defaults(alpha, beta)
  InitSpec init;
  OutputSpec outputs;

  void validate() const;
};

struct SweepSpec {
  int schema_version = 1;
  std::vector<Real> alpha_grid;
  std::vector<Real> beta_grid;
  ExperimentSpec base;
  int parallelism = 1;
  bool stability_check = true;       // rerun each cell at N/2
  Real bounded_log_slope = 0.5;      // BOUNDED vs GROWING screening threshold
  Real stability_tol = 0.1;          // relative ladder drift under N -> N/2

  void validate() const;
};

nlohmann::json to_json(const ExperimentSpec& spec);
ExperimentSpec experiment_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepSpec& spec);
SweepSpec sweep_from_json(const nlohmann::json& j);

ExperimentSpec load_experiment(const std::string& path);
SweepSpec load_sweep(const std::string& path);

std::string version_string();

}  // namespace bsq
