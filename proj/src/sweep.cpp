#include "bsq/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "bsq/errors.hpp"
#include "bsq/random.hpp"

namespace bsq {

namespace {

struct LadderOutcome {
  bool blown_up = false;
  Real ladder_g_final = 0, ladder_omega_final = 0;
  Real ladder_g_slope = 0, ladder_omega_slope = 0;
  Real max_linf_omega = 0, max_linf_grad_theta = 0, max_l2_G = 0;
  Real max_res = 0;
};

LadderOutcome run_cell_once(const ExperimentSpec& spec, int n,
                            std::uint64_t cell_seed) {
  SolverConfig solver = spec.solver;
  solver.n = n;
  solver.seed = cell_seed;
  solver.store_states = false;

  const Grid grid(n);
  FlowState init =
      make_initial_data(spec.init.kind, grid, cell_seed, spec.init.amplitude);

  DiagnosticsMonitor monitor(solver, spec.diagnostics);
  Trajectory traj = run(solver, init, {monitor.callback()});

  LadderOutcome out;
  out.blown_up = traj.blow_up.flagged;
  const auto& recs = monitor.records();
  if (recs.empty()) return out;

  const auto times = record_times(recs);
  const LadderStats s1 = ladder_stats(times, g_ladder_series(recs));
  const LadderStats s2 = ladder_stats(times, omega_ladder_series(recs));
  out.ladder_g_final = s1.final_value;
  out.ladder_omega_final = s2.final_value;
  out.ladder_g_slope = s1.log_slope_last_half;
  out.ladder_omega_slope = s2.log_slope_last_half;
  for (const auto& r : recs) {
    out.max_linf_omega = std::max(out.max_linf_omega, r.linf_omega);
    out.max_linf_grad_theta =
        std::max(out.max_linf_grad_theta, r.linf_grad_theta);
    out.max_l2_G = std::max(out.max_l2_G, r.l2_G);
    out.max_res = std::max({out.max_res, r.res_theta_energy,
                            r.res_theta_maxprin, r.res_u_energy});
  }
  return out;
}

CellResult run_cell(const SweepSpec& spec, Real alpha, Real beta,
                    std::uint64_t cell_seed) {
  CellResult cell;
  cell.alpha = alpha;
  cell.beta = beta;
  try {
    const RegimeInfo regime = regime_classify(alpha, beta);
    cell.regime = to_string(regime.criticality);
    cell.beta_star = regime.beta_star;
    cell.covered = regime.covered;

    ExperimentSpec exp = spec.base;
    exp.solver.alpha = alpha;
    exp.solver.beta = beta;
    if (!exp.diagnostics_explicit) {
      exp.diagnostics = DiagnosticsConfig::defaults(alpha, beta);
    }

    const LadderOutcome fine = run_cell_once(exp, exp.solver.n, cell_seed);
    cell.ladder_g_final = fine.ladder_g_final;
    cell.ladder_omega_final = fine.ladder_omega_final;
    cell.ladder_g_slope = fine.ladder_g_slope;
    cell.ladder_omega_slope = fine.ladder_omega_slope;
    cell.max_linf_omega = fine.max_linf_omega;
    cell.max_linf_grad_theta = fine.max_linf_grad_theta;
    cell.max_l2_G = fine.max_l2_G;
    cell.max_res_energy_laws = fine.max_res;

    // The attached ladder follows the beta* branch: G-based below alpha=2/3,
    // vorticity-based above.
    const bool g_branch = alpha <= 2.0 / 3.0;
    const Real slope = g_branch ? fine.ladder_g_slope : fine.ladder_omega_slope;

    if (spec.stability_check) {
      // Same dt on half the grid; the CFL bound only loosens.
      const LadderOutcome coarse =
          run_cell_once(exp, exp.solver.n / 2, cell_seed);
      cell.ladder_g_coarse = coarse.ladder_g_final;
      cell.ladder_omega_coarse = coarse.ladder_omega_final;
      const Real fine_v = g_branch ? fine.ladder_g_final : fine.ladder_omega_final;
      const Real coarse_v = g_branch ? coarse.ladder_g_final : coarse.ladder_omega_final;
      cell.resolution_stable =
          !fine.blown_up && !coarse.blown_up &&
          std::abs(fine_v - coarse_v) <=
              spec.stability_tol * std::max(std::abs(fine_v), Real(1e-12));
    } else {
      cell.resolution_stable = !fine.blown_up;
    }

    if (fine.blown_up) {
      cell.verdict = "UNRESOLVED";
    } else if (slope > spec.bounded_log_slope) {
      cell.verdict = "GROWING";
    } else if (!cell.resolution_stable ||
               fine.max_res > exp.diagnostics.tolerance) {
      cell.verdict = "UNRESOLVED";
    } else {
      cell.verdict = "BOUNDED";
    }
    cell.status = "ok";
  } catch (const std::exception& e) {
    cell.verdict = "ERROR";
    cell.status = e.what();
  }
  return cell;
}

}  // namespace

std::vector<CellResult> run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  struct Task {
    Real alpha, beta;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t ia = 0; ia < spec.alpha_grid.size(); ++ia) {
    for (std::size_t ib = 0; ib < spec.beta_grid.size(); ++ib) {
      tasks.push_back({spec.alpha_grid[ia], spec.beta_grid[ib],
                       mode_seed(spec.base.init.seed, static_cast<int>(ia),
                                 static_cast<int>(ib))});
    }
  }

  std::vector<CellResult> results(tasks.size());
  if (tasks.empty()) return results;

  const int pool = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      results[i] = run_cell(spec, tasks[i].alpha, tasks[i].beta, tasks[i].seed);
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(pool));
  for (int k = 0; k < pool; ++k) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return results;
}

void write_atlas_csv(const std::string& path,
                     const std::vector<CellResult>& cells) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot open " + tmp + " for writing");
    out << "alpha,beta,regime,covered,beta_star,verdict,resolution_stable,"
           "max_linf_omega,max_linf_grad_theta,max_l2_G,max_res_energy_laws,"
           "ladder_g_final,ladder_omega_final,ladder_g_slope,ladder_omega_slope,ladder_g_coarse,"
           "ladder_omega_coarse,status\n";
    char buf[64];
    auto num = [&](Real v) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    };
    for (const auto& c : cells) {
      std::snprintf(buf, sizeof buf, "%.17g", c.alpha);
      out << buf;
      num(c.beta);
      out << ',' << c.regime << ',' << (c.covered ? "COVERED" : "NOT_COVERED");
      num(c.beta_star);
      out << ',' << c.verdict << ',' << (c.resolution_stable ? 1 : 0);
      num(c.max_linf_omega);
      num(c.max_linf_grad_theta);
      num(c.max_l2_G);
      num(c.max_res_energy_laws);
      num(c.ladder_g_final);
      num(c.ladder_omega_final);
      num(c.ladder_g_slope);
      num(c.ladder_omega_slope);
      num(c.ladder_g_coarse);
      num(c.ladder_omega_coarse);
      out << ",\"" << c.status << "\"\n";
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw Error("cannot rename " + tmp + " to " + path);
  }
}

}  // namespace bsq
