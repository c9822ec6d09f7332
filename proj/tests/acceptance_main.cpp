// Acceptance suite: prints one pass/fail line per criterion and exits
// non-zero if any fails. Criteria are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "bsq/diagnostics.hpp"
#include "bsq/inequality_checks.hpp"
#include "bsq/oracles.hpp"
#include "bsq/random.hpp"
#include "bsq/sweep.hpp"

using namespace bsq;
namespace fs = std::filesystem;

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

struct Criterion {
  int id;
  std::string title;
  Real budget_seconds;
  std::function<bool(std::string&)> body;
};

Real rel_l2(const SpectralField& a, const SpectralField& b) {
  return spectral_l2_norm(a - b) / std::max(spectral_l2_norm(b), Real(1e-300));
}

std::string num(Real v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---- 1: operator identities ----
bool criterion_operators(std::string& detail) {
  Real worst = 0;
  for (int n : {16, 64}) {
    const Grid g(n);
    const SpectralField f = random_multiscale_field(g, 101 + n, 1.3);
    worst = std::max(worst, rel_l2(to_spectral(to_physical(f), g), f));

    const SpectralField zm = random_multiscale_field(g, 202 + n, 1.0);
    for (auto [s1, s2] :
         {std::pair<Real, Real>{0.5, 0.5}, {-1.0, 2.0}, {0.7, -0.4}}) {
      worst = std::max(
          worst, rel_l2(fractional_laplacian(fractional_laplacian(zm, s1), s2),
                        fractional_laplacian(zm, s1 + s2)));
    }

    const SpectralField w = random_multiscale_field(g, 303 + n, 1.2);
    const VelocityField u = biot_savart(w);
    worst = std::max(worst, rel_l2(curl(u), w));
    worst = std::max(worst, divergence_defect(u) / spectral_l2_norm(w));

    const SpectralField th = random_multiscale_field(g, 404 + n, 1.1);
    const SpectralField rb = riesz_beta(th, 0.7);
    worst = std::max(worst, rel_l2((w - rb) + rb, w));
  }
  detail = "max residual " + num(worst);
  return worst < 1e-10;
}

// ---- 2: closed-form dynamics ----
bool criterion_eigenmode(std::string& detail) {
  SolverConfig cfg;
  cfg.alpha = 0.8;
  cfg.beta = 0.6;
  cfg.n = 32;
  cfg.dt = 1e-3;
  cfg.horizon = 1.0;
  cfg.integrator = Integrator::EtdRk4;
  cfg.store_states = false;
  const Grid g(cfg.n);

  cfg.store_states = true;
  FlowState omega_init(g);
  omega_init.omega.set_mode_pair(1, 0, Complex(0, -0.5));
  FlowState last_w;
  {
    Trajectory t = run(cfg, omega_init);
    if (t.blow_up.flagged) {
      detail = "unexpected blow-up flag";
      return false;
    }
    last_w = t.states.back();
  }
  SpectralField expect_w(g);
  expect_w.set_mode_pair(1, 0, Complex(0, -0.5 * std::exp(-1.0)));
  const Real err_w = rel_l2(last_w.omega, expect_w);

  cfg.kappa = 1.0;
  FlowState theta_init(g);
  theta_init.theta.set_mode_pair(0, 1, Complex(0, -0.5));
  Trajectory tt = run(cfg, theta_init);
  SpectralField expect_t(g);
  expect_t.set_mode_pair(0, 1, Complex(0, -0.5 * std::exp(-1.0)));
  const Real err_t = rel_l2(tt.states.back().theta, expect_t);
  const Real err_w0 = spectral_l2_norm(tt.states.back().omega);

  detail = "omega err " + num(err_w) + ", theta err " + num(err_t) +
           ", stray omega " + num(err_w0);
  return err_w < 1e-8 && err_t < 1e-8 && err_w0 < 1e-10;
}

// ---- 3: dealiased product vs brute-force convolution ----
bool criterion_dealias(std::string& detail) {
  const Grid g(16);
  Real worst = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const SpectralField f = random_multiscale_field(g, 1000 + trial, 0.9);
    const SpectralField h = random_multiscale_field(g, 2000 + trial, 1.2);
    const SpectralField fast = dealiased_product(f, h);
    const SpectralField exact = convolution_oracle(f, h);
    worst = std::max(worst, (fast.coeffs - exact.coeffs).abs().maxCoeff());
  }
  // edge case: top retained modes
  SpectralField top(g);
  top.set_mode_pair(5, 5, Complex(0.3, 0.1));
  top.set_mode_pair(5, -5, Complex(-0.2, 0.05));
  const SpectralField fast = dealiased_product(top, top);
  worst = std::max(
      worst, (fast.coeffs - convolution_oracle(top, top).coeffs).abs().maxCoeff());
  detail = "max coefficient residual " + num(worst);
  return worst < 1e-12;
}

// ---- 4: energy laws with under-resolved negative control ----
namespace {

// Worst signed residual of the three monitored inequalities over t > 0.
Real worst_energy_law_residual(const std::vector<DiagnosticsRecord>& recs) {
  Real worst = -kInf;
  for (std::size_t i = 1; i < recs.size(); ++i) {
    worst = std::max({worst, recs[i].res_theta_energy,
                      recs[i].res_theta_maxprin, recs[i].res_u_energy});
  }
  return worst;
}

}  // namespace

bool criterion_energy(std::string& detail) {
  SolverConfig cfg;
  cfg.alpha = 0.8;
  cfg.beta = 0.7;
  cfg.n = 128;
  cfg.dt = 2.5e-3;
  cfg.horizon = 2.0;
  cfg.store_states = false;

  // The dealiased vorticity-form discretization conserves the quadratic laws
  // at any resolution, so the resolution signature lives in the sup-norm line;
  // the control comparison is made on the ensemble of the worst residuals.
  bool ok = true;
  Real fine_max = -kInf, fine_sum = 0, coarse_sum = 0;
  for (int run_id = 0; run_id < 5; ++run_id) {
    const Grid g(cfg.n);
    FlowState init =
        make_initial_data(InitKind::RandomSmooth, g, 500 + run_id, 4.0);
    SpectralField sharp = random_smooth_field(g, 9000 + run_id, 7.0);
    const Real sharp_max = physical_max_abs(sharp);
    sharp.coeffs *= Complex(1 / std::max(sharp_max, Real(1e-300)), 0);
    init.theta = sharp;

    DiagnosticsMonitor mon(cfg, DiagnosticsConfig::defaults(cfg.alpha, cfg.beta));
    Trajectory traj = run(cfg, init, {mon.callback()});
    ok = ok && !traj.blow_up.flagged;
    const Real fine_worst = worst_energy_law_residual(mon.records());
    fine_max = std::max(fine_max, fine_worst);
    fine_sum += fine_worst;

    // negative control: the same fields truncated onto N = 16
    SolverConfig coarse_cfg = cfg;
    coarse_cfg.n = 16;
    const Grid gc(16);
    FlowState coarse_init(gc);
    coarse_init.omega = restrict_to(init.omega, gc);
    coarse_init.theta = restrict_to(init.theta, gc);
    apply_dealias(coarse_init.omega);
    apply_dealias(coarse_init.theta);
    DiagnosticsMonitor cmon(coarse_cfg,
                            DiagnosticsConfig::defaults(cfg.alpha, cfg.beta));
    Trajectory ct = run(coarse_cfg, coarse_init, {cmon.callback()});
    (void)ct;
    coarse_sum += worst_energy_law_residual(cmon.records());
  }
  const Real fine_mean = fine_sum / 5, coarse_mean = coarse_sum / 5;
  detail = "resolved worst residual " + num(fine_max) + " (mean " +
           num(fine_mean) + "); N=16 control mean " + num(coarse_mean);
  return ok && fine_max <= 1e-4 && coarse_mean > fine_mean;
}

// ---- 5: pointwise defect nonnegativity + max-point floor ----
bool criterion_pointwise(std::string& detail) {
  const Grid g(64);
  const Grid fine(128);
  bool ok = true;
  std::string parts;
  for (Real beta : {0.3, 0.5, 0.8}) {
    Real worst = 0, floor_c = kInf, floor_f = kInf;
    for (int trial = 0; trial < 100; ++trial) {
      const SpectralField th =
          random_smooth_field(g, 900 + trial, 4.0 + (trial % 3));
      const PointwiseReport pw = pointwise_bound_check(th, beta);
      if (pw.scale > 0) worst = std::min(worst, pw.min_defect / pw.scale);
      if (pw.maxpoint_ratio) floor_c = std::min(floor_c, *pw.maxpoint_ratio);
      const PointwiseReport pf = pointwise_bound_check(zero_pad(th, fine), beta);
      if (pf.maxpoint_ratio) floor_f = std::min(floor_f, *pf.maxpoint_ratio);
    }
    const bool stable = std::abs(floor_f - floor_c) <= 0.2 * floor_c;
    ok = ok && worst >= -1e-10 && floor_c > 0 && stable;
    parts += "b=" + num(beta) + ": defect " + num(worst) + ", c1 " +
             num(floor_c) + (stable ? "" : " UNSTABLE") + "; ";
  }
  detail = parts;
  return ok;
}

// ---- 6: Littlewood-Paley suite ----
bool criterion_littlewood_paley(std::string& detail) {
  // partition + reconstruction
  Real worst_partition = 0, worst_reconstruction = 0;
  for (int n : {16, 32, 64, 128}) {
    const Grid g(n);
    const DyadicBank bank = build_bank(g);
    RealGrid sum = RealGrid::Zero(n, n);
    for (int j = -1; j <= bank.j_max; ++j) sum += bank.mask(j);
    worst_partition =
        std::max(worst_partition, (sum - g.dealias_weights()).abs().maxCoeff());
    const SpectralField f = random_multiscale_field(g, 42 + n, 1.2);
    SpectralField rec(g);
    for (int j = -1; j <= bank.j_max; ++j) rec = rec + dyadic_block(f, j, bank);
    worst_reconstruction = std::max(worst_reconstruction, rel_l2(rec, f));
  }

  // B^s_{2,2} / H^s census with refinement stability
  const Grid g64(64), g128(128);
  const DyadicBank b64 = build_bank(g64), b128 = build_bank(g128);
  bool equivalence_ok = true;
  std::string eq;
  for (Real s : {0.3, 0.5, 1.0}) {
    Real lo = kInf, hi = 0, lo_f = kInf, hi_f = 0;
    for (int trial = 0; trial < 100; ++trial) {
      const SpectralField f =
          random_multiscale_field(g64, 7000 + trial, 1.0 + 0.02 * (trial % 40));
      const Real r = besov_norm(f, {s, 2, 2}, b64) / direct_hs_norm(f, s);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      const SpectralField fp = zero_pad(f, g128);
      const Real rf = besov_norm(fp, {s, 2, 2}, b128) / direct_hs_norm(fp, s);
      lo_f = std::min(lo_f, rf);
      hi_f = std::max(hi_f, rf);
    }
    equivalence_ok = equivalence_ok && lo > 0 && hi / lo < 4 &&
                     std::abs(hi_f - hi) < 0.2 * hi &&
                     std::abs(lo_f - lo) < 0.2 * lo;
    eq += "s=" + num(s) + ":[" + num(lo) + "," + num(hi) + "] ";
  }

  // Bernstein j-independence (scale-covariant pairs)
  const Grid g_bank(128);
  const DyadicBank bank = build_bank(g_bank);
  bool bernstein_ok = true;
  for (const BernsteinPair p : {BernsteinPair{1, 2, 2}, BernsteinPair{1, 4, 4}}) {
    const auto stats = bernstein_check(bank, 100, 1, 4, {p}, 99991);
    Real gm_lo = kInf, gm_hi = 0;
    for (const auto& st : stats) {
      gm_lo = std::min(gm_lo, st.geomean);
      gm_hi = std::max(gm_hi, st.geomean);
    }
    bernstein_ok = bernstein_ok && gm_hi / gm_lo < 1.10;
  }

  detail = "partition " + num(worst_partition) + ", reconstruction " +
           num(worst_reconstruction) + ", equivalence " + eq +
           (bernstein_ok ? ", bernstein j-stable" : ", bernstein UNSTABLE");
  return worst_partition < 1e-12 && worst_reconstruction < 1e-12 &&
         equivalence_ok && bernstein_ok;
}

// ---- 7: commutator identity + estimate census ----
bool criterion_commutator(std::string& detail) {
  const Grid g(64);
  const Grid fine(128);
  const DyadicBank bank = build_bank(g);
  const DyadicBank bank_f = build_bank(fine);

  Real worst_gap = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Real beta = 0.15 + 0.75 * (trial % 10) / 10.0;
    const VelocityField u =
        biot_savart(random_smooth_field(g, 3000 + trial, 5.0));
    const SpectralField th = random_smooth_field(g, 4000 + trial, 5.0);
    worst_gap = std::max(worst_gap, rel_l2(commutator_rbeta(u, th, beta),
                                           commutator_rbeta_divform(u, th, beta)));
  }

  Real max_ratio = 0, max_ratio_f = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const VelocityField u =
        biot_savart(random_smooth_field(g, 5000 + trial, 6.0));
    const SpectralField th = random_smooth_field(g, 6000 + trial, 6.0);
    max_ratio = std::max(max_ratio, commutator_estimate_ratio(
                                        u, th, 0.7, 2, 4, 4, 4, &bank));
    const VelocityField uf(zero_pad(u.u1, fine), zero_pad(u.u2, fine));
    max_ratio_f = std::max(
        max_ratio_f, commutator_estimate_ratio(uf, zero_pad(th, fine), 0.7, 2,
                                               4, 4, 4, &bank_f));
  }
  const bool stable = std::abs(max_ratio_f - max_ratio) <= 0.2 * max_ratio;
  detail = "two-route gap " + num(worst_gap) + ", census max " +
           num(max_ratio) + " (refined " + num(max_ratio_f) + ")";
  return worst_gap < 1e-12 && max_ratio > 0 && std::isfinite(max_ratio) &&
         stable;
}

// ---- 8: regime classifier ----
bool criterion_classifier(std::string& detail) {
  const Real e1 = std::abs(beta_star(0.8) - 0.6);
  const Real e2 = std::abs(beta_star(0.5) - 15.0 / 22.0);
  const Real a = 2.0 / 3.0;
  const Real left = std::max(2.0 / 3.0, (4 - a * a) / (4 + 3 * a));
  const Real right = (2 - a) / 2;
  const Real e3 = std::abs(left - right);
  const Real e4 = std::abs(beta_star(a - 1e-13) - beta_star(a + 1e-13));

  const RegimeInfo sub = regime_classify(0.8, 0.7);
  const RegimeInfo crit = regime_classify(0.5, 0.5);
  const bool flags = sub.criticality == Criticality::Subcritical &&
                     sub.covered &&
                     crit.criticality == Criticality::Critical &&
                     !crit.covered;
  detail = "beta*(0.8) err " + num(e1) + ", beta*(0.5) err " + num(e2) +
           ", branch gap " + num(std::max(e3, e4));
  return e1 < 1e-12 && e2 < 1e-12 && e3 < 1e-12 && e4 < 1e-11 && flags;
}

// ---- 9: evidence sweep ----
bool criterion_sweep(std::string& detail) {
  SweepSpec spec;
  spec.alpha_grid = {0.4, 0.6, 0.7, 0.9};
  spec.beta_grid = {0.4, 0.6, 0.72, 0.9};
  spec.base.label = "acceptance-atlas";
  spec.base.solver.n = 128;
  spec.base.solver.dt = 5e-3;
  spec.base.solver.horizon = 3.0;
  spec.base.solver.alpha = 0.8;  // overwritten per cell
  spec.base.solver.beta = 0.7;
  spec.base.init.kind = InitKind::RandomSmooth;
  spec.base.init.seed = 20240811;
  spec.base.init.amplitude = 1.0;
  spec.base.outputs.directory = "unused";
  spec.parallelism = 4;
  spec.stability_check = true;

  const auto cells_a = run_sweep(spec, 4);
  const auto cells_b = run_sweep(spec, 2);  // different scheduling

  const fs::path dir = fs::temp_directory_path() / "bsq_acceptance_atlas";
  fs::create_directories(dir);
  write_atlas_csv((dir / "a.csv").string(), cells_a);
  write_atlas_csv((dir / "b.csv").string(), cells_b);
  std::ifstream fa(dir / "a.csv"), fb(dir / "b.csv");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  const bool deterministic = sa.str() == sb.str();

  int covered = 0, covered_bounded = 0, covered_stable = 0;
  std::string bad;
  for (const auto& c : cells_a) {
    if (!c.covered) continue;
    ++covered;
    if (c.verdict == "BOUNDED") ++covered_bounded;
    if (c.resolution_stable) ++covered_stable;
    if (c.verdict != "BOUNDED" || !c.resolution_stable) {
      bad += " (" + num(c.alpha) + "," + num(c.beta) + "):" + c.verdict;
    }
  }
  fs::remove_all(dir);
  detail = std::to_string(covered) + " covered cells, " +
           std::to_string(covered_bounded) + " bounded, " +
           std::to_string(covered_stable) + " N-stable, atlas " +
           (deterministic ? "deterministic" : "NON-DETERMINISTIC") + bad;
  return covered > 0 && covered_bounded == covered &&
         covered_stable == covered && deterministic;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  std::vector<Criterion> criteria = {
      {1, "operator identity suite (round-trip, semigroup, Biot-Savart, "
          "G-recombination, divergence-free; < 1e-10 at N in {16, 64})",
       60, criterion_operators},
      {2, "closed-form eigenmode decay (ETD-RK4, dt = 1e-3, N = 32, rel err "
          "< 1e-8 at t = 1)",
       10, criterion_eigenmode},
      {3, "dealiased product equals O(N^4) convolution at N = 16 (< 1e-12)",
       30, criterion_dealias},
      {4, "energy laws on 5 resolved runs (N = 128, T = 2, res <= 1e-4) with "
          "under-resolved N = 16 control",
       600, criterion_energy},
      {5, "pointwise defect nonnegativity and max-point floor (100 fields x "
          "beta in {0.3, 0.5, 0.8}, N = 64 -> 128)",
       300, criterion_pointwise},
      {6, "Littlewood-Paley suite (partition, reconstruction, B/H "
          "equivalence, Bernstein j-independence)",
       300, criterion_littlewood_paley},
      {7, "commutator two-route identity (50 trials, 1e-12) and estimate "
          "census stability",
       300, criterion_commutator},
      {8, "regime classifier exact values and branch continuity (1e-12)", 1,
       criterion_classifier},
      {9, "evidence sweep 4x4 at N = 128, T = 3: covered cells BOUNDED and "
          "N-stable, atlas deterministic",
       3600, criterion_sweep},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
      pass = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const Real elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = elapsed <= c.budget_seconds;
    if (!pass || !in_budget) ++failures;
    std::printf("[%s] criterion %d: %s - %s [%.1fs%s]\n",
                pass && in_budget ? "PASS" : "FAIL", c.id, c.title.c_str(),
                detail.c_str(), elapsed,
                in_budget ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
