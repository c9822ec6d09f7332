#include "bsq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bsq/diagnostics.hpp"
#include "bsq/errors.hpp"
#include "bsq/inequality_checks.hpp"
#include "bsq/oracles.hpp"
#include "bsq/random.hpp"

namespace bsq {

using nlohmann::json;

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();

Real rel_l2_diff(const SpectralField& a, const SpectralField& b) {
  const Real scale = std::max(spectral_l2_norm(b), Real(1e-300));
  return spectral_l2_norm(a - b) / scale;
}

void add_check(SuiteReport& report, const std::string& name, bool pass,
               const std::string& detail, json census = {}) {
  report.checks.push_back({name, pass, detail, std::move(census)});
  report.pass = report.pass && pass;
}

// Canonical census row shape shared by all ratio censuses.
json ratio_census(const std::string& check_name, int n_trials, Real min_ratio,
                  Real max_ratio, int n_grid, json parameters) {
  return {{"check_name", check_name},   {"n_trials", n_trials},
          {"min_ratio", min_ratio},     {"max_ratio", max_ratio},
          {"N", n_grid},                {"parameters", std::move(parameters)}};
}

std::string num(Real v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------- operators ----------------

void operators_on_grid(SuiteReport& report, int n, std::uint64_t seed) {
  const Grid grid(n);
  const std::string tag = " (N=" + std::to_string(n) + ")";

  // Transform round-trip.
  {
    const SpectralField f = random_multiscale_field(grid, seed, 1.5);
    const SpectralField back = to_spectral(to_physical(f), grid);
    const Real r = rel_l2_diff(back, f);
    add_check(report, "round_trip" + tag, r < 1e-12, "residual " + num(r));
  }

  // Lambda semigroup on zero-mean data.
  {
    const SpectralField f = random_multiscale_field(grid, seed + 1, 1.0);
    Real worst = 0;
    for (auto [s1, s2] : {std::pair<Real, Real>{0.4, 0.7},
                          {-0.5, 1.3},
                          {-1.0, 2.0},
                          {0.9, -0.2}}) {
      const SpectralField a =
          fractional_laplacian(fractional_laplacian(f, s1), s2);
      const SpectralField b = fractional_laplacian(f, s1 + s2);
      worst = std::max(worst, rel_l2_diff(a, b));
    }
    add_check(report, "semigroup" + tag, worst < 1e-10,
              "max residual " + num(worst));
  }

  // Biot-Savart: solenoidal by construction, curl recovers omega.
  {
    const SpectralField w = random_multiscale_field(grid, seed + 2, 1.2);
    const VelocityField u = biot_savart(w);
    const Real div = divergence_defect(u) / std::max(spectral_l2_norm(w), 1e-300);
    const Real inv = rel_l2_diff(curl(u), w);
    add_check(report, "biot_savart" + tag, div < 1e-12 && inv < 1e-10,
              "div " + num(div) + ", curl-inverse " + num(inv));
  }

  // G-recombination: omega = (omega - R_b theta) + R_b theta.
  {
    const SpectralField w = random_multiscale_field(grid, seed + 3, 1.1);
    const SpectralField th = random_multiscale_field(grid, seed + 4, 1.4);
    const Real beta = 0.7;
    const SpectralField rb = riesz_beta(th, beta);
    const Real r = rel_l2_diff((w - rb) + rb, w);
    add_check(report, "g_recombination" + tag, r < 1e-12, "residual " + num(r));
  }

  // Velocity-split sum identity.
  {
    const SpectralField gq = random_multiscale_field(grid, seed + 5, 1.3);
    const SpectralField th = random_multiscale_field(grid, seed + 6, 1.2);
    const Real beta = 0.6;
    auto [ug, ut] = velocity_split(gq, th, beta);
    const VelocityField full = biot_savart(gq + riesz_beta(th, beta));
    const Real r = std::max(rel_l2_diff(ug.u1 + ut.u1, full.u1),
                            rel_l2_diff(ug.u2 + ut.u2, full.u2));
    add_check(report, "velocity_split" + tag, r < 1e-12, "residual " + num(r));
  }

  // Parseval pin of the transform normalization.
  {
    const SpectralField f = random_multiscale_field(grid, seed + 7, 1.6);
    const Real phys = lp_norm(f, 2);
    const Real spect = spectral_l2_norm(f);
    const Real r = std::abs(phys - spect) / std::max(spect, 1e-300);
    add_check(report, "parseval" + tag, r < 1e-10, "residual " + num(r));
  }
}

SuiteReport suite_operators(const SuiteOptions& opt) {
  SuiteReport report;
  report.suite = "operators";
  report.options = opt;

  operators_on_grid(report, 16, opt.seed);
  if (opt.n != 16) operators_on_grid(report, opt.n, opt.seed + 100);

  // Closed forms on the unit circle of modes.
  {
    const Grid grid(32);
    SpectralField s1(grid);  // sin(x1)
    s1.set_mode_pair(1, 0, Complex(0, -0.5));
    const SpectralField r = riesz_beta(s1, 0.7);
    SpectralField c1(grid);  // cos(x1)
    c1.set_mode_pair(1, 0, Complex(0.5, 0));
    const Real e1 = rel_l2_diff(r, c1);

    SpectralField c2(grid);  // cos(2 x1)
    c2.set_mode_pair(2, 0, Complex(0.5, 0));
    SpectralField expect(grid);  // -sqrt(2) sin(2 x1)
    expect.set_mode_pair(2, 0, Complex(0, 0.5 * std::sqrt(2.0)));
    const Real e2 = rel_l2_diff(riesz_beta(c2, 0.5), expect);

    const Real e3 =
        std::abs(lp_norm(fractional_laplacian(s1, 0.7) - s1, 2));
    add_check(report, "riesz_closed_forms", e1 < 1e-12 && e2 < 1e-12 && e3 < 1e-12,
              "sin: " + num(e1) + ", cos2x: " + num(e2) +
                  ", unit-mode fixed point: " + num(e3));
  }

  // Dealiased product against the direct convolution oracle.
  {
    const Grid grid(16);
    Real worst = 0;
    for (int trial = 0; trial < std::min(opt.trials, 10); ++trial) {
      const SpectralField f =
          random_multiscale_field(grid, opt.seed + 200 + trial, 0.8);
      const SpectralField g =
          random_multiscale_field(grid, opt.seed + 300 + trial, 1.1);
      const SpectralField fast = dealiased_product(f, g);
      const SpectralField exact = convolution_oracle(f, g);
      worst = std::max(worst, (fast.coeffs - exact.coeffs).abs().maxCoeff());
    }
    add_check(report, "dealias_vs_convolution", worst < 1e-12,
              "max coefficient residual " + num(worst),
              ratio_census("dealias_vs_convolution", std::min(opt.trials, 10),
                           0, worst, 16, {}));
  }
  return report;
}

// ---------------- bernstein / Littlewood-Paley ----------------

SuiteReport suite_bernstein(const SuiteOptions& opt) {
  SuiteReport report;
  report.suite = "bernstein";
  report.options = opt;

  // Bank identities across grid sizes.
  for (int n : {16, 32, 64, 128}) {
    const Grid grid(n);
    const DyadicBank bank = build_bank(grid);

    RealGrid sum = RealGrid::Zero(n, n);
    for (int j = -1; j <= bank.j_max; ++j) sum += bank.mask(j);
    const RealGrid target = grid.dealias_weights();
    const Real partition = (sum - target).abs().maxCoeff();

    const SpectralField f = random_multiscale_field(grid, opt.seed + n, 1.3);
    SpectralField rec(grid);
    for (int j = -1; j <= bank.j_max; ++j) {
      rec = rec + dyadic_block(f, j, bank);
    }
    const Real reconstruction = rel_l2_diff(rec, f);

    Real ortho = 0;
    for (int j = -1; j <= bank.j_max; ++j) {
      for (int l = j + 2; l <= bank.j_max; ++l) {
        ortho = std::max(ortho, (bank.mask(j) * bank.mask(l)).maxCoeff());
      }
    }
    add_check(report, "bank_identities (N=" + std::to_string(n) + ")",
              partition < 1e-12 && reconstruction < 1e-12 && ortho == 0,
              "partition " + num(partition) + ", reconstruction " +
                  num(reconstruction) + ", block overlap " + num(ortho));
  }

  // j_max formula example.
  {
    const DyadicBank bank = build_bank(Grid(64));
    add_check(report, "j_max_formula", bank.j_max == 4,
              "j_max(64) = " + std::to_string(bank.j_max));
  }

  // Besov B^s_{2,2} vs direct H^s census with refinement stability.
  {
    json census = json::array();
    bool pass = true;
    std::string detail;
    const Grid coarse(opt.n);
    const Grid fine(2 * opt.n);
    const DyadicBank bank_c = build_bank(coarse);
    const DyadicBank bank_f = build_bank(fine);
    for (Real s : {0.3, 0.5, 1.0}) {
      Real lo_c = kInf, hi_c = 0, lo_f = kInf, hi_f = 0;
      for (int trial = 0; trial < opt.trials; ++trial) {
        const SpectralField f = random_multiscale_field(
            coarse, opt.seed + 1000 + trial, 1.0 + 0.02 * (trial % 50));
        const Real direct = direct_hs_norm(f, s);
        if (direct == 0) continue;
        const Real ratio = besov_norm(f, {s, 2, 2}, bank_c) / direct;
        lo_c = std::min(lo_c, ratio);
        hi_c = std::max(hi_c, ratio);
        const SpectralField fp = zero_pad(f, fine);
        const Real ratio_f = besov_norm(fp, {s, 2, 2}, bank_f) /
                             direct_hs_norm(fp, s);
        lo_f = std::min(lo_f, ratio_f);
        hi_f = std::max(hi_f, ratio_f);
      }
      const bool ok = hi_c / lo_c < 4.0 &&
                      std::abs(hi_f - hi_c) < 0.2 * hi_c &&
                      std::abs(lo_f - lo_c) < 0.2 * lo_c;
      pass = pass && ok;
      census.push_back(ratio_census(
          "besov_h_equivalence", opt.trials, lo_c, hi_c, opt.n,
          {{"s", s}, {"min_ratio_refined", lo_f}, {"max_ratio_refined", hi_f}}));
      detail += "s=" + num(s) + ": [" + num(lo_c) + ", " + num(hi_c) + "] ";
    }
    add_check(report, "besov_h_equivalence", pass, detail, census);
  }

  // Bernstein ratios: j-independence of the scale-covariant pairs.
  {
    const Grid grid(std::max(opt.n, 128));
    const DyadicBank bank = build_bank(grid);
    const std::vector<BernsteinPair> pairs = {
        {1, 2, 2}, {0, 2, 2}, {1, 4, 4}, {0, 2, kInf}, {1, 2, 4}};
    const auto stats =
        bernstein_check(bank, opt.trials, 1, 4, pairs, opt.seed + 5000);

    json census = json::array();
    bool pass = true;
    std::string detail;
    for (const auto& p : pairs) {
      Real gm_min = kInf, gm_max = 0, all_min = kInf, all_max = 0;
      for (const auto& st : stats) {
        if (st.k != p.k || st.a != p.a || st.b != p.b) continue;
        gm_min = std::min(gm_min, st.geomean);
        gm_max = std::max(gm_max, st.geomean);
        all_min = std::min(all_min, st.min_ratio);
        all_max = std::max(all_max, st.max_ratio);
        census.push_back(ratio_census(
            "bernstein", st.trials, st.min_ratio, st.max_ratio,
            std::max(opt.n, 128),
            {{"j", st.j}, {"k", st.k}, {"a", st.a}, {"b", st.b},
             {"geomean", st.geomean}}));
      }
      const bool same_integrability = p.a == p.b;
      bool ok = all_max < 20 && all_min > 1e-3;
      if (same_integrability) {
        ok = ok && gm_max / gm_min < 1.10;  // j-independence within 10%
        if (p.k == 1) ok = ok && all_min > 0.74 && all_max < 2.67;
        if (p.k == 0) ok = ok && std::abs(all_min - 1) < 1e-9 &&
                      std::abs(all_max - 1) < 1e-9;
      }
      pass = pass && ok;
      detail += "(k=" + std::to_string(p.k) + ",a=" + num(p.a) + ",b=" +
                num(p.b) + "): gm-drift " + num(gm_max / gm_min - 1) + " ";
    }
    add_check(report, "bernstein_ratios", pass, detail, census);
  }
  return report;
}

// ---------------- Gagliardo-Nirenberg ----------------

SuiteReport suite_gn(const SuiteOptions& opt) {
  SuiteReport report;
  report.suite = "gn";
  report.options = opt;

  const Real beta = 0.7;
  const Real s = 0.75;
  const std::vector<Real> gammas = {0.1, 0.25, 0.4};

  const Grid coarse(opt.n);
  const Grid fine(2 * opt.n);
  const DyadicBank bank_c = build_bank(coarse);
  const DyadicBank bank_f = build_bank(fine);

  Real max_interp_c = 0, max_interp_f = 0, min_interp_c = kInf;
  std::vector<Real> max_lg_c(gammas.size(), 0), max_lg_f(gammas.size(), 0),
      min_lg_c(gammas.size(), kInf);
  for (int trial = 0; trial < opt.trials; ++trial) {
    SpectralField f =
        trial % 2 == 0
            ? random_multiscale_field(coarse, opt.seed + trial, 1.0 + 0.015 * trial)
            : random_smooth_field(coarse, opt.seed + trial, 3.0 + 0.1 * trial);
    // Amplitude family (the ratios are scale-invariant; exercised anyway).
    f.coeffs *= Complex(std::pow(10.0, trial % 5 - 2), 0);
    const GnReport r_c = gn_interpolation_check(f, beta, s, gammas, bank_c);
    const GnReport r_f =
        gn_interpolation_check(zero_pad(f, fine), beta, s, gammas, bank_f);
    max_interp_c = std::max(max_interp_c, r_c.ratio_interp);
    min_interp_c = std::min(min_interp_c, r_c.ratio_interp);
    max_interp_f = std::max(max_interp_f, r_f.ratio_interp);
    for (std::size_t g = 0; g < gammas.size(); ++g) {
      max_lg_c[g] = std::max(max_lg_c[g], r_c.ratio_lg[g].second);
      min_lg_c[g] = std::min(min_lg_c[g], r_c.ratio_lg[g].second);
      max_lg_f[g] = std::max(max_lg_f[g], r_f.ratio_lg[g].second);
    }
  }

  {
    const bool ok = max_interp_c > 0 && max_interp_c < 100 &&
                    std::abs(max_interp_f - max_interp_c) < 0.25 * max_interp_c;
    add_check(report, "besov_interpolation", ok,
              "max ratio " + num(max_interp_c) + " (refined " +
                  num(max_interp_f) + ")",
              ratio_census("besov_interpolation", opt.trials, min_interp_c,
                           max_interp_c, opt.n,
                           {{"beta", beta}, {"s", s},
                            {"max_ratio_refined", max_interp_f}}));
  }
  {
    bool ok = true;
    json census = json::array();
    std::string detail;
    for (std::size_t g = 0; g < gammas.size(); ++g) {
      ok = ok && max_lg_c[g] > 0 && max_lg_c[g] < 100 &&
           std::abs(max_lg_f[g] - max_lg_c[g]) < 0.25 * max_lg_c[g];
      census.push_back(ratio_census(
          "lambda_gamma_interpolation", opt.trials, min_lg_c[g], max_lg_c[g],
          opt.n,
          {{"gamma", gammas[g]}, {"beta", beta},
           {"max_ratio_refined", max_lg_f[g]}}));
      detail += "gamma=" + num(gammas[g]) + ": " + num(max_lg_c[g]) + " ";
    }
    add_check(report, "lambda_gamma_interpolation", ok, detail, census);
  }

  // Single-block fields: the ratio should not drift with j.
  {
    const DyadicBank bank = build_bank(Grid(std::max(opt.n, 128)));
    Real lo = kInf, hi = 0;
    for (int j = 1; j <= 4; ++j) {
      Real acc = 0;
      const int reps = 8;
      for (int k = 0; k < reps; ++k) {
        const SpectralField f =
            random_annulus_field(bank, j, opt.seed + 7000 + 31 * j + k);
        acc += gn_interpolation_check(f, beta, s, {}, bank).ratio_interp;
      }
      acc /= reps;
      lo = std::min(lo, acc);
      hi = std::max(hi, acc);
    }
    add_check(report, "single_block_j_independence", hi / lo < 3.0,
              "per-j mean ratio in [" + num(lo) + ", " + num(hi) + "]");
  }
  return report;
}

// ---------------- commutator ----------------

SuiteReport suite_commutator(const SuiteOptions& opt) {
  SuiteReport report;
  report.suite = "commutator";
  report.options = opt;

  const Grid grid(opt.n);
  const DyadicBank bank = build_bank(grid);

  // Two independently coded evaluation orders.
  {
    Real worst = 0;
    const int trials = std::max(50, opt.trials / 2);
    for (int trial = 0; trial < trials; ++trial) {
      const Real beta = 0.15 + 0.8 * (trial % 7) / 7.0;
      const VelocityField u =
          biot_savart(random_smooth_field(grid, opt.seed + 10 + trial, 5.0));
      const SpectralField th =
          random_smooth_field(grid, opt.seed + 500 + trial, 5.0);
      const SpectralField a = commutator_rbeta(u, th, beta);
      const SpectralField b = commutator_rbeta_divform(u, th, beta);
      worst = std::max(worst, rel_l2_diff(a, b));
    }
    add_check(report, "two_route_identity", worst < 1e-12,
              "max relative gap " + num(worst),
              ratio_census("two_route_identity", trials, 0, worst, opt.n, {}));
  }

  // Hand convolution: stream cos(x2), theta = sin(x1).
  {
    Real worst = 0;
    for (Real beta : {0.3, 0.7}) {
      SpectralField psi(grid);
      psi.set_mode_pair(0, 1, Complex(0.5, 0));  // cos(x2)
      VelocityField u;
      u.u1 = -derivative(psi, 2);
      u.u2 = derivative(psi, 1);
      SpectralField th(grid);
      th.set_mode_pair(1, 0, Complex(0, -0.5));  // sin(x1)

      const Real c = 1 - std::pow(2.0, -beta / 2);
      SpectralField expect(grid);  // c sin(x1) sin(x2)
      expect.set_mode_pair(1, 1, Complex(-c / 4, 0));
      expect.set_mode_pair(1, -1, Complex(c / 4, 0));
      worst = std::max(worst, rel_l2_diff(commutator_rbeta(u, th, beta), expect));
    }
    add_check(report, "hand_convolution_pin", worst < 1e-12,
              "max residual " + num(worst));
  }

  // Constant transport field commutes.
  {
    VelocityField u(grid);
    u.u1.coeffs(0, 0) = Complex(0.8, 0);
    u.u2.coeffs(0, 0) = Complex(-1.3, 0);
    const SpectralField th = random_smooth_field(grid, opt.seed + 900, 4.0);
    const Real r = spectral_l2_norm(commutator_rbeta(u, th, 0.6)) /
                   std::max(spectral_l2_norm(th), 1e-300);
    add_check(report, "constant_velocity", r < 1e-13, "residual " + num(r));
  }

  // Estimate-form ratio census with refinement stability.
  {
    const Grid fine(2 * opt.n);
    const DyadicBank bank_f = build_bank(fine);
    const Real beta = 0.7;
    Real max_c = 0, max_f = 0, min_c = kInf;
    for (int trial = 0; trial < opt.trials; ++trial) {
      const VelocityField u =
          biot_savart(random_smooth_field(grid, opt.seed + 2000 + trial, 6.0));
      const SpectralField th =
          random_smooth_field(grid, opt.seed + 3000 + trial, 6.0);
      const Real ratio =
          commutator_estimate_ratio(u, th, beta, 2, 4, 4, 4, &bank);
      max_c = std::max(max_c, ratio);
      min_c = std::min(min_c, ratio);
      const VelocityField uf{zero_pad(u.u1, fine), zero_pad(u.u2, fine)};
      max_f = std::max(max_f,
                       commutator_estimate_ratio(uf, zero_pad(th, fine), beta,
                                                 2, 4, 4, 4, &bank_f));
    }
    const bool ok =
        max_c > 0 && max_c < 100 && std::abs(max_f - max_c) < 0.2 * max_c;
    add_check(report, "estimate_ratio_census", ok,
              "max ratio " + num(max_c) + " (refined " + num(max_f) + ")",
              ratio_census("estimate_ratio_census", opt.trials, min_c, max_c,
                           opt.n,
                           {{"p", 2}, {"p1", 4}, {"p2", 4}, {"r", 4},
                            {"beta", beta}, {"max_ratio_refined", max_f}}));
  }
  return report;
}

// ---------------- pointwise ----------------

SuiteReport suite_pointwise(const SuiteOptions& opt) {
  SuiteReport report;
  report.suite = "pointwise";
  report.options = opt;

  // Hand pin: theta = sin(x1) gives D(0) = 1 - 2^{beta-2}.
  {
    const Grid grid(32);
    SpectralField th(grid);
    th.set_mode_pair(1, 0, Complex(0, -0.5));
    Real worst = 0;
    for (Real beta : {0.3, 0.5, 0.8}) {
      // D(x) = 1/2 + (1/2 - 2^{beta-2}) cos(2 x1); min at cos = -1.
      const Real expected_min = std::pow(2.0, beta - 2);
      const PointwiseReport pw = pointwise_bound_check(th, beta);
      worst = std::max(worst, std::abs(pw.min_defect - expected_min));
      const Real expected_ratio = 1 - std::pow(2.0, beta - 2);
      if (pw.maxpoint_ratio) {
        worst = std::max(worst, std::abs(*pw.maxpoint_ratio - expected_ratio));
      } else {
        worst = kInf;
      }
    }
    add_check(report, "single_mode_pin", worst < 1e-12,
              "max deviation " + num(worst));
  }

  // Constant field: defect vanishes, ratio undefined.
  {
    const Grid grid(32);
    SpectralField th(grid);
    th.coeffs(0, 0) = Complex(2.5, 0);
    const PointwiseReport pw = pointwise_bound_check(th, 0.5);
    add_check(report, "constant_field",
              pw.min_defect == 0 && !pw.maxpoint_ratio,
              "min defect " + num(pw.min_defect));
  }

  // Census: nonnegativity and max-point floor, stable under refinement.
  {
    const Grid grid(opt.n);
    const Grid fine(2 * opt.n);
    json census = json::array();
    bool pass = true;
    std::string detail;
    for (Real beta : {0.3, 0.5, 0.8}) {
      Real worst_defect = 0;  // most negative min_defect / scale
      Real floor_c = kInf, ceil_c = 0, floor_f = kInf;
      for (int trial = 0; trial < opt.trials; ++trial) {
        const SpectralField th =
            random_smooth_field(grid, opt.seed + trial, 4.0 + (trial % 3));
        const PointwiseReport pw = pointwise_bound_check(th, beta);
        if (pw.scale > 0) {
          worst_defect = std::min(worst_defect, pw.min_defect / pw.scale);
        }
        if (pw.maxpoint_ratio) {
          floor_c = std::min(floor_c, *pw.maxpoint_ratio);
          ceil_c = std::max(ceil_c, *pw.maxpoint_ratio);
        }
        const PointwiseReport pwf =
            pointwise_bound_check(zero_pad(th, fine), beta);
        if (pwf.maxpoint_ratio) floor_f = std::min(floor_f, *pwf.maxpoint_ratio);
      }
      const bool ok = worst_defect >= -1e-10 && floor_c > 0 &&
                      std::abs(floor_f - floor_c) <= 0.2 * floor_c;
      pass = pass && ok;
      census.push_back(ratio_census(
          "pointwise_defect", opt.trials, floor_c, ceil_c, opt.n,
          {{"beta", beta}, {"min_defect_rel", worst_defect},
           {"c1_floor_refined", floor_f}}));
      detail += "beta=" + num(beta) + ": defect " + num(worst_defect) +
                ", c1 " + num(floor_c) + " ";
    }
    add_check(report, "defect_census", pass, detail, census);
  }

  // Scalar (vorticity-form) defect nonnegativity.
  {
    const Grid grid(opt.n);
    Real worst = 0;
    Real floor_c2 = kInf, ceil_c2 = 0;
    for (int trial = 0; trial < std::min(opt.trials, 40); ++trial) {
      const SpectralField w =
          random_smooth_field(grid, opt.seed + 4000 + trial, 5.0);
      const VelocityField u = biot_savart(w);
      const Real ur = velocity_lp_norm(u, 8);
      const PointwiseReport pw = pointwise_bound_check_scalar(w, 0.8, ur, 8);
      if (pw.scale > 0) worst = std::min(worst, pw.min_defect / pw.scale);
      if (pw.maxpoint_ratio) {
        floor_c2 = std::min(floor_c2, *pw.maxpoint_ratio);
        ceil_c2 = std::max(ceil_c2, *pw.maxpoint_ratio);
      }
    }
    add_check(report, "scalar_defect", worst >= -1e-10 && floor_c2 > 0,
              "min defect " + num(worst) + ", c2 floor " + num(floor_c2),
              ratio_census("scalar_defect", std::min(opt.trials, 40), floor_c2,
                           ceil_c2, opt.n,
                           {{"alpha", 0.8}, {"r", 8},
                            {"min_defect_rel", worst}}));
  }
  return report;
}

// ---------------- energy ----------------

SuiteReport suite_energy(const SuiteOptions& opt) {
  SuiteReport report;
  report.suite = "energy";
  report.options = opt;

  SolverConfig solver;
  solver.alpha = 0.8;
  solver.beta = opt.beta;
  solver.n = opt.n;
  solver.dt = 2e-3;
  solver.horizon = 1.0;
  solver.store_states = false;

  for (int run_id = 0; run_id < 2; ++run_id) {
    const Grid grid(solver.n);
    FlowState init = make_initial_data(InitKind::RandomSmooth, grid,
                                       opt.seed + 17 * run_id, 1.0);
    DiagnosticsMonitor monitor(solver,
                               DiagnosticsConfig::defaults(solver.alpha,
                                                           solver.beta));
    const Trajectory traj = run(solver, init, {monitor.callback()});

    Real max_res = -kInf, max_bal = 0;
    for (const auto& r : monitor.records()) {
      max_res = std::max({max_res, r.res_theta_energy, r.res_theta_maxprin,
                          r.res_u_energy});
      max_bal = std::max({max_bal, std::abs(r.bal_theta_energy),
                          std::abs(r.bal_u_energy)});
    }
    const bool ok = !traj.blow_up.flagged && max_res <= 1e-4;
    add_check(report, "energy_laws_run_" + std::to_string(run_id), ok,
              "max inequality residual " + num(max_res) +
                  ", max balance defect " + num(max_bal),
              ratio_census("energy_laws", 1, 0, max_res, solver.n,
                           {{"horizon", solver.horizon},
                            {"seed", opt.seed + 17 * run_id},
                            {"max_balance_defect", max_bal}}));
  }
  return report;
}

}  // namespace

json SuiteReport::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"pass", c.pass},
                           {"detail", c.detail},
                           {"census", c.census}});
  }
  return {{"suite", suite},
          {"pass", pass},
          {"options",
           {{"n", options.n},
            {"trials", options.trials},
            {"beta", options.beta},
            {"seed", options.seed}}},
          {"checks", checks_json}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "operators", "bernstein", "gn", "commutator", "pointwise", "energy"};
  return names;
}

std::vector<SuiteReport> run_suites(const std::string& name,
                                    const SuiteOptions& options) {
  std::vector<SuiteReport> reports;
  auto dispatch = [&](const std::string& suite) {
    if (suite == "operators") return suite_operators(options);
    if (suite == "bernstein") return suite_bernstein(options);
    if (suite == "gn") return suite_gn(options);
    if (suite == "commutator") return suite_commutator(options);
    if (suite == "pointwise") return suite_pointwise(options);
    if (suite == "energy") return suite_energy(options);
    throw Error("unknown verify suite '" + suite + "'");
  };
  if (name == "all") {
    for (const auto& suite : suite_names()) reports.push_back(dispatch(suite));
  } else {
    reports.push_back(dispatch(name));
  }
  return reports;
}

}  // namespace bsq
