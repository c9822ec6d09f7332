// bsq: pseudo-spectral 2D Boussinesq solver with fractional dissipation and
// the harmonic-analysis monitors that track its a priori bounds.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bsq/config.hpp"
#include "bsq/diagnostics.hpp"
#include "bsq/errors.hpp"
#include "bsq/snapshot.hpp"
#include "bsq/sweep.hpp"
#include "bsq/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void atomic_write_text(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw bsq::Error("cannot open " + tmp + " for writing");
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw bsq::Error("cannot rename " + tmp + " to " + path);
  }
}

int cmd_simulate(const std::string& config_path, std::string out_dir) {
  bsq::ExperimentSpec spec;
  try {
    spec = bsq::load_experiment(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (out_dir.empty()) out_dir = spec.outputs.directory;

  const auto start = std::chrono::steady_clock::now();

  bsq::SolverConfig solver = spec.solver;
  solver.seed = spec.init.seed;
  solver.store_states = false;

  bsq::FlowState init;
  try {
    if (!spec.init.snapshot_path.empty()) {
      init = bsq::state_from_snapshot(spec.init.snapshot_path);
      if (init.omega.grid.size() != solver.n) {
        throw bsq::Error("snapshot grid does not match solver n");
      }
    } else {
      init = bsq::make_initial_data(spec.init.kind, bsq::Grid(solver.n),
                                    spec.init.seed, spec.init.amplitude);
    }
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }

  fs::create_directories(out_dir);
  bsq::DiagnosticsMonitor monitor(solver, spec.diagnostics);

  // Snapshot writer fires when the state crosses each requested time.
  std::vector<bsq::Real> pending = spec.outputs.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snap = 0;
  auto snapshots = [&](const bsq::FlowState& s) {
    while (next_snap < pending.size() &&
           s.t >= pending[next_snap] - 1e-12) {
      bsq::SnapshotHeader header;
      header.n = solver.n;
      header.alpha = solver.alpha;
      header.beta = solver.beta;
      header.nu = solver.nu;
      header.kappa = solver.kappa;
      header.t = s.t;
      const bsq::RealGrid omega_p = bsq::to_physical(s.omega);
      const bsq::RealGrid theta_p = bsq::to_physical(s.theta);
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_t%.6f.bsq", s.t);
      bsq::write_snapshot((fs::path(out_dir) / name).string(), header,
                          {&omega_p, &theta_p});
      ++next_snap;
    }
  };

  std::string status = "ok";
  std::string failure;
  bsq::BlowUpFlag blow_up;
  try {
    bsq::Trajectory traj =
        bsq::run(solver, init, {monitor.callback(), snapshots});
    blow_up = traj.blow_up;
    if (blow_up.flagged) status = "unresolved";
    monitor.write_csv((fs::path(out_dir) / "diagnostics.csv").string());
  } catch (const std::exception& e) {
    // e.g. a failed snapshot write; record what exists and surface the error
    status = "error";
    failure = e.what();
  }

  const auto wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
  json manifest = {
      {"version", bsq::version_string()},
      {"config", bsq::to_json(spec)},
      {"status", status},
      {"wall_time_seconds", wall.count()},
      {"samples", monitor.records().size()},
      {"snapshots_written", next_snap},
  };
  if (blow_up.flagged) {
    manifest["blow_up"] = {{"t", blow_up.t}, {"reason", blow_up.reason}};
  }
  if (!failure.empty()) manifest["error"] = failure;
  atomic_write_text((fs::path(out_dir) / "manifest.json").string(),
                    manifest.dump(2) + "\n");

  std::cout << "simulate: " << spec.label << " -> " << out_dir << " ("
            << status << ", " << monitor.records().size() << " samples)\n";
  if (status == "error") {
    std::cerr << "error: " << failure << "\n";
    return kExitFailure;
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, std::string out_dir,
              int workers) {
  bsq::SweepSpec spec;
  try {
    spec = bsq::load_sweep(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (out_dir.empty()) out_dir = spec.base.outputs.directory;
  fs::create_directories(out_dir);
  if (workers <= 0) workers = spec.parallelism;

  const auto cells = bsq::run_sweep(spec, workers);
  const std::string atlas = (fs::path(out_dir) / "atlas.csv").string();
  bsq::write_atlas_csv(atlas, cells);

  int bounded = 0, growing = 0, unresolved = 0, errors = 0;
  for (const auto& c : cells) {
    if (c.verdict == "BOUNDED") ++bounded;
    else if (c.verdict == "GROWING") ++growing;
    else if (c.verdict == "UNRESOLVED") ++unresolved;
    else ++errors;
  }
  std::cout << "sweep: " << cells.size() << " cells -> " << atlas << " ("
            << bounded << " bounded, " << growing << " growing, "
            << unresolved << " unresolved, " << errors << " errors)\n";
  return errors == 0 ? 0 : kExitFailure;
}

int cmd_verify(const std::string& suite, const bsq::SuiteOptions& options,
               const std::string& report_path) {
  std::vector<bsq::SuiteReport> reports;
  try {
    reports = bsq::run_suites(suite, options);
  } catch (const bsq::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  bool pass = true;
  json out = json::array();
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << r.suite << "/" << c.name
                << ": " << c.detail << "\n";
    }
    pass = pass && r.pass;
    out.push_back(r.to_json());
  }
  if (!report_path.empty()) {
    atomic_write_text(report_path, out.dump(2) + "\n");
  }
  std::cout << (pass ? "verify: all checks passed" : "verify: FAILURES above")
            << " (seed " << options.seed << ")\n";
  return pass ? 0 : kExitFailure;
}

int cmd_besov(const std::string& snapshot_path, const std::string& field,
              double s, double p, double r) {
  bsq::Snapshot snap;
  try {
    snap = bsq::read_snapshot(snapshot_path);
  } catch (const std::exception& e) {
    std::cerr << "snapshot error: " << e.what() << "\n";
    return kExitUsage;
  }

  const bsq::Grid grid(snap.header.n);
  auto field_index = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < snap.header.field_order.size(); ++i) {
      if (snap.header.field_order[i] == name) return static_cast<int>(i);
    }
    return -1;
  };

  bsq::SpectralField f(grid);
  if (field == "G") {
    const int iw = field_index("omega");
    const int it = field_index("theta");
    if (iw < 0 || it < 0) {
      std::cerr << "snapshot lacks omega/theta; cannot form G\n";
      return kExitUsage;
    }
    bsq::FlowState state(grid);
    state.omega = bsq::to_spectral(snap.fields[iw], grid);
    state.theta = bsq::to_spectral(snap.fields[it], grid);
    f = bsq::combined_quantity(state, snap.header.beta);
  } else {
    const int idx = field_index(field);
    if (idx < 0) {
      std::cerr << "field '" << field << "' not present in snapshot\n";
      return kExitUsage;
    }
    f = bsq::to_spectral(snap.fields[static_cast<std::size_t>(idx)], grid);
  }

  const bsq::DyadicBank bank = bsq::build_bank(grid);
  const bsq::BesovIndex idx{s, p, r};
  const bsq::Real norm = bsq::besov_norm(f, idx, bank);
  const auto terms = bsq::besov_block_terms(f, s, p, bank);
  std::printf("B^{%g}_{%g,%g}[%s] = %.12g\n", s, p, r, field.c_str(), norm);
  std::printf("%4s  %18s\n", "j", "2^{js}||D_j f||_p");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::printf("%4d  %18.12g\n", static_cast<int>(i) - 1, terms[i]);
  }
  return 0;
}

int cmd_classify(double alpha, double beta) {
  bsq::RegimeInfo info;
  try {
    info = bsq::regime_classify(alpha, beta);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
  std::printf("%s, beta*=%.12g, %s\n", bsq::to_string(info.criticality).c_str(),
              info.beta_star, info.covered ? "COVERED" : "NOT_COVERED");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D Boussinesq with fractional dissipation: solver, "
               "Littlewood-Paley toolkit, and a priori-bound monitors"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  std::string config_path, out_dir, report_path, suite, snapshot_path;
  std::string field = "omega";
  int workers = 0;
  double s = 0, p = 2, r = 2, alpha = 0, beta = 0;
  bsq::SuiteOptions options;

  auto* sim = app.add_subcommand("simulate", "run one experiment");
  sim->add_option("--config", config_path, "experiment JSON")->required();
  sim->add_option("--out", out_dir, "output directory override");

  auto* swp = app.add_subcommand("sweep", "run an (alpha, beta) atlas");
  swp->add_option("--config", config_path, "sweep JSON")->required();
  swp->add_option("--out", out_dir, "output directory override");
  swp->add_option("--workers", workers, "worker threads");

  auto* ver = app.add_subcommand("verify", "run a property census");
  ver->add_option("suite", suite,
                  "operators|bernstein|gn|commutator|pointwise|energy|all")
      ->required();
  ver->add_option("--n", options.n, "grid size");
  ver->add_option("--trials", options.trials, "census trials");
  ver->add_option("--beta", options.beta, "dissipation exponent");
  ver->add_option("--seed", options.seed, "census seed");
  ver->add_option("--out", report_path, "census JSON report path");

  auto* bes = app.add_subcommand("besov", "Besov norm of a snapshot field");
  bes->add_option("snapshot", snapshot_path, ".bsq snapshot")->required();
  bes->add_option("--field", field, "omega|theta|G");
  bes->add_option("--s", s, "smoothness")->required();
  bes->add_option("--p", p, "integrability");
  bes->add_option("--r", r, "summation exponent");

  auto* cls = app.add_subcommand("classify", "regime and beta* for (alpha, beta)");
  cls->add_option("--alpha", alpha, "velocity dissipation exponent")->required();
  cls->add_option("--beta", beta, "thermal dissipation exponent")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitUsage : 0;
  }

  try {
    if (sim->parsed()) return cmd_simulate(config_path, out_dir);
    if (swp->parsed()) return cmd_sweep(config_path, out_dir, workers);
    if (ver->parsed()) return cmd_verify(suite, options, report_path);
    if (bes->parsed()) return cmd_besov(snapshot_path, field, s, p, r);
    if (cls->parsed()) return cmd_classify(alpha, beta);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
