#include "bsq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

constexpr Real kNan = std::numeric_limits<Real>::quiet_NaN();

Real sq(Real x) { return x * x; }

Real safe_ratio(Real num, Real den) { return den == 0 ? 0 : num / den; }

}  // namespace

// -------- regime classification --------

std::string to_string(Criticality c) {
  switch (c) {
    case Criticality::Supercritical: return "SUPERCRITICAL";
    case Criticality::Critical: return "CRITICAL";
    case Criticality::Subcritical: return "SUBCRITICAL";
  }
  return "SUPERCRITICAL";
}

Real beta_star(Real alpha) {
  if (!(alpha > 0 && alpha < 1)) throw Error("beta_star needs alpha in (0, 1)");
  if (alpha <= 2.0 / 3.0) {
    return std::max(2.0 / 3.0, (4 - alpha * alpha) / (4 + 3 * alpha));
  }
  return (2 - alpha) / 2;
}

RegimeInfo regime_classify(Real alpha, Real beta) {
  if (!(alpha > 0 && alpha < 1) || !(beta > 0 && beta < 1)) {
    throw Error("regime_classify needs alpha, beta in (0, 1)");
  }
  RegimeInfo info{};
  const Real s = alpha + beta - 1;
  info.criticality = s > 0   ? Criticality::Subcritical
                     : s < 0 ? Criticality::Supercritical
                             : Criticality::Critical;
  info.beta_star = beta_star(alpha);
  info.covered = beta > info.beta_star;
  return info;
}

// -------- proof-tracked fields --------

SpectralField combined_quantity(const FlowState& state, Real beta) {
  return state.omega - riesz_beta(state.theta, beta);
}

namespace {

// u . grad f with each term a dealiased product.
SpectralField advect(const VelocityField& u, const SpectralField& f) {
  auto [d1, d2] = gradient(f);
  return dealiased_product(u.u1, d1) + dealiased_product(u.u2, d2);
}

// div(u f); equals u . grad f for solenoidal u.
SpectralField advect_divform(const VelocityField& u, const SpectralField& f) {
  return derivative(dealiased_product(u.u1, f), 1) +
         derivative(dealiased_product(u.u2, f), 2);
}

}  // namespace

SpectralField commutator_rbeta(const VelocityField& u,
                               const SpectralField& theta, Real beta) {
  return riesz_beta(advect(u, theta), beta) -
         advect(u, riesz_beta(theta, beta));
}

SpectralField commutator_rbeta_divform(const VelocityField& u,
                                       const SpectralField& theta, Real beta) {
  return riesz_beta(advect_divform(u, theta), beta) -
         advect_divform(u, riesz_beta(theta, beta));
}

RealGrid velocity_gradient_magnitude(const VelocityField& u) {
  const RealGrid d1u1 = to_physical(derivative(u.u1, 1));
  const RealGrid d2u1 = to_physical(derivative(u.u1, 2));
  const RealGrid d1u2 = to_physical(derivative(u.u2, 1));
  const RealGrid d2u2 = to_physical(derivative(u.u2, 2));
  return (d1u1.square() + d2u1.square() + d1u2.square() + d2u2.square()).sqrt();
}

Real grad_u_linf(const VelocityField& u) {
  return velocity_gradient_magnitude(u).maxCoeff();
}

Real velocity_lp_norm(const VelocityField& u, Real p) {
  const RealGrid mag =
      (to_physical(u.u1).square() + to_physical(u.u2).square()).sqrt();
  return lp_norm(mag, p);
}

Real commutator_estimate_ratio(const VelocityField& u,
                               const SpectralField& theta, Real beta, Real p,
                               Real p1, Real p2, Real r,
                               const DyadicBank* bank) {
  if (!(p >= 2) || std::isinf(p)) {
    throw Error("commutator estimate needs p in [2, inf)");
  }
  const Real ip1 = std::isinf(p1) ? 0 : 1 / p1;
  const Real ip2 = std::isinf(p2) ? 0 : 1 / p2;
  if (std::abs(1 / p - ip1 - ip2) > 1e-12) {
    throw Error("commutator estimate needs 1/p = 1/p1 + 1/p2");
  }
  DyadicBank local;
  if (!bank) {
    local = build_bank(theta.grid);
    bank = &local;
  }
  const Real lhs = lp_norm(commutator_rbeta(u, theta, beta), p);
  const Real besov = besov_norm(theta, {1 - beta, p2, 1}, *bank);
  const Real rhs = lp_norm(velocity_gradient_magnitude(u), p1) * besov +
                   velocity_lp_norm(u, r) * lp_norm(theta, 2);
  return safe_ratio(lhs, rhs);
}

// -------- pointwise lower-bound checks --------

namespace {

struct DefectEval {
  RealGrid defect;     // D on the refined grid
  RealGrid magnitude;  // |grad f| (gradient form) or |f| (scalar form)
};

// Quadratic quantities are formed on a twice-refined grid, where products of
// dealiased inputs are alias-free, so D carries the exact values of the
// band-limited field.
DefectEval gradient_defect(const SpectralField& theta, Real beta) {
  const Grid fine(2 * theta.grid.size());
  const SpectralField th = zero_pad(theta, fine);
  auto [g1, g2] = gradient(th);
  const RealGrid g1p = to_physical(g1);
  const RealGrid g2p = to_physical(g2);
  const RealGrid l1p = to_physical(fractional_laplacian(g1, beta));
  const RealGrid l2p = to_physical(fractional_laplacian(g2, beta));
  const RealGrid grad_sq = g1p.square() + g2p.square();
  const RealGrid lgrad =
      to_physical(fractional_laplacian(to_spectral(grad_sq, fine), beta));
  DefectEval out;
  out.defect = g1p * l1p + g2p * l2p - Real(0.5) * lgrad;
  out.magnitude = grad_sq.sqrt();
  return out;
}

DefectEval scalar_defect(const SpectralField& f, Real alpha) {
  const Grid fine(2 * f.grid.size());
  const SpectralField ff = zero_pad(f, fine);
  const RealGrid fp = to_physical(ff);
  const RealGrid lfp = to_physical(fractional_laplacian(ff, alpha));
  const RealGrid lsq =
      to_physical(fractional_laplacian(to_spectral(fp.square(), fine), alpha));
  DefectEval out;
  out.defect = fp * lfp - Real(0.5) * lsq;
  out.magnitude = fp.abs();
  return out;
}

PointwiseReport finish_report(const DefectEval& eval, Real weight,
                              Real exponent) {
  PointwiseReport report;
  report.min_defect = eval.defect.minCoeff();
  report.scale = eval.defect.abs().maxCoeff();
  Eigen::Index i = 0, j = 0;
  const Real mag_max = eval.magnitude.maxCoeff(&i, &j);
  if (mag_max > 1e-13 * std::max(Real(1), weight)) {
    report.maxpoint_ratio = eval.defect(i, j) * std::pow(weight, exponent) /
                            std::pow(mag_max, 2 + exponent);
  }
  return report;
}

}  // namespace

PointwiseReport pointwise_bound_check(const SpectralField& theta, Real beta) {
  if (!(beta > 0 && beta < 2)) {
    throw Error("pointwise_bound_check needs beta in (0, 2)");
  }
  const DefectEval eval = gradient_defect(theta, beta);
  // p = inf form: D(x~) >= c1 |grad theta(x~)|^{2+beta} / ||theta||_inf^beta.
  const Real theta_linf = physical_max_abs(theta);
  return finish_report(eval, theta_linf, beta);
}

PointwiseReport pointwise_bound_check_scalar(const SpectralField& f, Real alpha,
                                             Real weight_norm, Real r) {
  if (!(alpha > 0 && alpha < 2)) {
    throw Error("pointwise_bound_check_scalar needs alpha in (0, 2)");
  }
  if (!(r > 2)) throw Error("pointwise_bound_check_scalar needs r > 2");
  const DefectEval eval = scalar_defect(f, alpha);
  return finish_report(eval, weight_norm, alpha * r / (2 + r));
}

// -------- BKM-type logarithmic inequality --------

Real log_inequality_ratio(const FlowState& state, Real s_ref) {
  if (!(s_ref > 2)) throw Error("log inequality check needs s_ref > 2");
  const VelocityField u = biot_savart(state.omega);
  const Real lhs = grad_u_linf(u);
  const Real u_l2 =
      std::sqrt(sq(spectral_l2_norm(u.u1)) + sq(spectral_l2_norm(u.u2)));
  const Real u_hs =
      std::sqrt(sq(sobolev_norm(u.u1, s_ref)) + sq(sobolev_norm(u.u2, s_ref)));
  const Real omega_linf = physical_max_abs(state.omega);
  const Real rhs =
      1 + u_l2 + omega_linf * std::log(std::exp(Real(1)) + u_hs);
  return safe_ratio(lhs, rhs);
}

// -------- trajectory diagnostics --------

DiagnosticsConfig DiagnosticsConfig::defaults(Real alpha, Real beta) {
  DiagnosticsConfig cfg;
  const Real rho_lower =
      std::max({Real(0), (4 - 5 * beta) / 2, (2 + alpha - 3 * beta) / 2});
  cfg.varrho = std::min(0.45 * beta, (rho_lower + beta / 2) / 2);
  cfg.delta = std::clamp((2 - alpha) / 4, Real(0), 0.45 * beta);
  return cfg;
}

void DiagnosticsConfig::validate(Real alpha, Real beta) const {
  (void)alpha;
  if (!(varrho >= 0 && varrho < beta / 2)) {
    throw Error("varrho must lie in [0, beta/2)");
  }
  if (!(delta >= 0 && delta < beta / 2)) {
    throw Error("delta must lie in [0, beta/2)");
  }
  for (Real r : r_list) {
    if (!(r >= 2) || std::isinf(r)) throw Error("r_list entries must be in [2, inf)");
  }
  if (!(s_ref > 2)) throw Error("s_ref must exceed 2");
  if (!(tolerance > 0)) throw Error("tolerance must be positive");
}

bool DiagnosticsRecord::finite() const {
  const Real entries[] = {t,
                          l2_theta,
                          l4_theta,
                          linf_theta,
                          l2_u,
                          h_half_beta_theta_sq_cum,
                          l2_G,
                          h_varrho_theta,
                          l2_omega,
                          h_delta_theta,
                          linf_grad_theta,
                          linf_omega,
                          grad_u_linf,
                          log_ineq_residual,
                          pointwise_bound_min,
                          ladder_g,
                          ladder_omega,
                          res_theta_energy,
                          res_theta_maxprin,
                          res_u_energy,
                          bal_theta_energy,
                          bal_u_energy};
  for (Real v : entries) {
    if (!std::isfinite(v)) return false;
  }
  for (Real v : lr_u) {
    if (!std::isfinite(v)) return false;
  }
  return true;  // maxpoint_ratio_theta may be NaN (undefined at zero gradient)
}

DiagnosticsMonitor::DiagnosticsMonitor(const SolverConfig& solver,
                                       DiagnosticsConfig cfg)
    : solver_(solver), cfg_(std::move(cfg)) {
  cfg_.validate(solver_.alpha, solver_.beta);
}

SampleCallback DiagnosticsMonitor::callback() {
  return [this](const FlowState& s) { sample(s); };
}

void DiagnosticsMonitor::sample(const FlowState& state) {
  const Real alpha = solver_.alpha;
  const Real beta = solver_.beta;

  DiagnosticsRecord rec;
  rec.t = state.t;

  const RealGrid theta_p = to_physical(state.theta);
  rec.l2_theta = lp_norm(theta_p, 2);
  rec.l4_theta = lp_norm(theta_p, 4);
  rec.linf_theta = lp_norm(theta_p, std::numeric_limits<Real>::infinity());

  const VelocityField u = biot_savart(state.omega);
  rec.l2_u = std::sqrt(sq(spectral_l2_norm(u.u1)) + sq(spectral_l2_norm(u.u2)));

  const SpectralField G = combined_quantity(state, beta);
  rec.l2_G = spectral_l2_norm(G);
  rec.h_varrho_theta = homogeneous_sobolev_norm(state.theta, cfg_.varrho);
  rec.l2_omega = spectral_l2_norm(state.omega);
  rec.h_delta_theta = homogeneous_sobolev_norm(state.theta, cfg_.delta);

  auto [g1, g2] = gradient(state.theta);
  rec.linf_grad_theta =
      (to_physical(g1).square() + to_physical(g2).square()).sqrt().maxCoeff();
  rec.linf_omega = physical_max_abs(state.omega);

  const RealGrid u1p = to_physical(u.u1);
  const RealGrid u2p = to_physical(u.u2);
  const RealGrid u_mag = (u1p.square() + u2p.square()).sqrt();
  for (Real r : cfg_.r_list) rec.lr_u.push_back(lp_norm(u_mag, r));

  rec.grad_u_linf = grad_u_linf(u);
  rec.log_ineq_residual = log_inequality_ratio(state, cfg_.s_ref);

  const PointwiseReport pw = pointwise_bound_check(state.theta, beta);
  rec.pointwise_bound_min = pw.min_defect;
  rec.maxpoint_ratio_theta = pw.maxpoint_ratio.value_or(kNan);

  // Dissipation functionals entering the cumulative integrals.
  const Real diss_theta = sq(homogeneous_sobolev_norm(state.theta, beta / 2));
  const Real diss_u = sq(homogeneous_sobolev_norm(u.u1, alpha / 2)) +
                      sq(homogeneous_sobolev_norm(u.u2, alpha / 2));
  const Real diss_G = sq(homogeneous_sobolev_norm(G, alpha / 2));
  const Real diss_theta_rho =
      sq(homogeneous_sobolev_norm(state.theta, cfg_.varrho + beta / 2));
  const Real diss_omega = sq(homogeneous_sobolev_norm(state.omega, alpha / 2));
  const Real diss_theta_delta =
      sq(homogeneous_sobolev_norm(state.theta, cfg_.delta + beta / 2));
  const Real buoy = l2_inner(state.theta, u.u2);

  if (!have_initial_) {
    have_initial_ = true;
    theta0_l2 = rec.l2_theta;
    theta0_linf = rec.linf_theta;
    u0_l2 = rec.l2_u;
  } else {
    const Real h = state.t - prev_t_;
    cum_diss_theta_ += h * (prev_diss_theta_ + diss_theta) / 2;
    cum_diss_u_ += h * (prev_diss_u_ + diss_u) / 2;
    cum_buoy_ += h * (prev_buoy_ + buoy) / 2;
    cum_ladder_g_int_ +=
        h * (prev_diss_G_ + diss_G + prev_diss_theta_rho_ + diss_theta_rho) / 2;
    cum_ladder_omega_int_ +=
        h *
        (prev_diss_omega_ + diss_omega + prev_diss_theta_delta_ +
         diss_theta_delta) /
        2;
  }
  prev_t_ = state.t;
  prev_diss_theta_ = diss_theta;
  prev_diss_u_ = diss_u;
  prev_buoy_ = buoy;
  prev_diss_G_ = diss_G;
  prev_diss_theta_rho_ = diss_theta_rho;
  prev_diss_omega_ = diss_omega;
  prev_diss_theta_delta_ = diss_theta_delta;

  rec.h_half_beta_theta_sq_cum = cum_diss_theta_;
  rec.ladder_g = sq(rec.l2_G) + sq(rec.h_varrho_theta) + cum_ladder_g_int_;
  rec.ladder_omega =
      sq(rec.l2_omega) + sq(rec.h_delta_theta) + cum_ladder_omega_int_;

  // Monitored inequalities exactly as displayed (unit dissipation weights),
  // signed so that positive means violation.
  rec.res_theta_energy =
      safe_ratio(sq(rec.l2_theta) + cum_diss_theta_ - sq(theta0_l2),
                 sq(theta0_l2));
  rec.res_theta_maxprin =
      safe_ratio(rec.linf_theta - theta0_linf, theta0_linf);
  const Real u_bound = sq(u0_l2 + state.t * theta0_l2);
  rec.res_u_energy =
      safe_ratio(sq(rec.l2_u) + cum_diss_u_ - u_bound, u_bound);

  // Sharp discrete balances; their residue measures resolution quality.
  const Real theta_scale = std::max(sq(theta0_l2), Real(1e-30));
  rec.bal_theta_energy =
      (sq(rec.l2_theta) + 2 * solver_.kappa * cum_diss_theta_ - sq(theta0_l2)) /
      theta_scale;
  const Real u_scale = std::max({sq(u0_l2), sq(theta0_l2), Real(1e-30)});
  rec.bal_u_energy = (sq(rec.l2_u) + 2 * solver_.nu * cum_diss_u_ -
                      2 * cum_buoy_ - sq(u0_l2)) /
                     u_scale;

  records_.push_back(std::move(rec));
}

std::vector<std::string> DiagnosticsMonitor::csv_columns(
    const std::vector<Real>& r_list) {
  std::vector<std::string> cols = {
      "t",          "l2_theta",      "l4_theta",
      "linf_theta", "l2_u",          "h_half_beta_theta_sq_cum",
      "l2_G",       "h_varrho_theta", "l2_omega",
      "h_delta_theta", "linf_grad_theta", "linf_omega"};
  for (Real r : r_list) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "lr_u_%g", r);
    cols.emplace_back(buf);
  }
  const char* tail[] = {"grad_u_linf",       "log_ineq_residual",
                        "pointwise_bound_min", "maxpoint_ratio_theta",
                        "ladder_g",          "ladder_omega",
                        "res_theta_energy",  "res_theta_maxprin",
                        "res_u_energy",      "bal_theta_energy",
                        "bal_u_energy"};
  cols.insert(cols.end(), std::begin(tail), std::end(tail));
  return cols;
}

void DiagnosticsMonitor::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  const auto cols = csv_columns(cfg_.r_list);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i];
  }
  out << "\n";
  char buf[64];
  auto put = [&](Real v, bool first) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << (first ? "" : ",") << buf;
  };
  for (const auto& r : records_) {
    put(r.t, true);
    for (Real v : {r.l2_theta, r.l4_theta, r.linf_theta, r.l2_u,
                   r.h_half_beta_theta_sq_cum, r.l2_G, r.h_varrho_theta,
                   r.l2_omega, r.h_delta_theta, r.linf_grad_theta,
                   r.linf_omega}) {
      put(v, false);
    }
    for (Real v : r.lr_u) put(v, false);
    for (Real v : {r.grad_u_linf, r.log_ineq_residual, r.pointwise_bound_min,
                   r.maxpoint_ratio_theta, r.ladder_g, r.ladder_omega,
                   r.res_theta_energy, r.res_theta_maxprin, r.res_u_energy,
                   r.bal_theta_energy, r.bal_u_energy}) {
      put(v, false);
    }
    out << "\n";
  }
}

// -------- series-level monitors --------

LadderStats ladder_stats(const std::vector<Real>& times,
                         const std::vector<Real>& values) {
  LadderStats stats;
  if (times.empty() || times.size() != values.size()) return stats;
  stats.final_value = values.back();
  stats.max_value = *std::max_element(values.begin(), values.end());

  const Real t_mid = times.front() + (times.back() - times.front()) / 2;
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < t_mid) continue;
    const Real y = std::log(std::max(values[i], Real(1e-300)));
    sx += times[i];
    sy += y;
    sxx += times[i] * times[i];
    sxy += times[i] * y;
    ++n;
  }
  const Real det = n * sxx - sx * sx;
  stats.log_slope_last_half = (n >= 2 && det > 0) ? (n * sxy - sx * sy) / det : 0;
  return stats;
}

std::vector<Real> g_ladder_series(const std::vector<DiagnosticsRecord>& recs) {
  std::vector<Real> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(r.ladder_g);
  return out;
}

std::vector<Real> omega_ladder_series(const std::vector<DiagnosticsRecord>& recs) {
  std::vector<Real> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(r.ladder_omega);
  return out;
}

std::vector<Real> record_times(const std::vector<DiagnosticsRecord>& recs) {
  std::vector<Real> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.push_back(r.t);
  return out;
}

std::vector<Real> velocity_lr_interpolation_ratios(
    const std::vector<DiagnosticsRecord>& recs, int r_index, Real r) {
  if (!(r >= 2)) throw Error("interpolation cross-check needs r >= 2");
  std::vector<Real> out;
  out.reserve(recs.size());
  for (const auto& rec : recs) {
    if (r_index < 0 || r_index >= static_cast<int>(rec.lr_u.size())) {
      throw Error("velocity_lr_interpolation_ratios: bad r_index");
    }
    const Real bound = std::pow(rec.l2_u, 2 / r) *
                       std::pow(rec.l2_omega, 1 - 2 / r);
    out.push_back(bound > 0 ? rec.lr_u[static_cast<std::size_t>(r_index)] / bound
                            : 0);
  }
  return out;
}

MaxnormOdeReport maxnorm_ode_monitor(const std::vector<DiagnosticsRecord>& recs,
                                     Real alpha, Real beta, Real r, int r_index,
                                     Real theta0_linf, Real c1, Real c2,
                                     Real tolerance) {
  MaxnormOdeReport report;
  report.c1 = c1;
  report.c2 = c2;
  if (recs.size() < 3) return report;

  auto lr_of = [&](const DiagnosticsRecord& rec) {
    if (r_index < 0 || r_index >= static_cast<int>(rec.lr_u.size())) {
      throw Error("maxnorm_ode_monitor: r_index outside the recorded r_list");
    }
    return rec.lr_u[static_cast<std::size_t>(r_index)];
  };

  int bad_phi = 0, bad_omega = 0, considered = 0;
  const Real omega_exp = alpha * r / (2 + r);
  for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
    const Real h2 = recs[i + 1].t - recs[i - 1].t;
    if (h2 <= 0) continue;
    ++considered;

    const Real phi = recs[i].linf_grad_theta;
    const Real d_phi2 =
        (sq(recs[i + 1].linf_grad_theta) - sq(recs[i - 1].linf_grad_theta)) / h2;
    const Real gain_phi =
        theta0_linf > 0 ? c1 * std::pow(phi, 2 + beta) / std::pow(theta0_linf, beta)
                        : 0;
    const Real rhs_phi = sq(phi) * recs[i].grad_u_linf;
    const Real res_phi = d_phi2 + gain_phi - rhs_phi;
    const Real scale_phi =
        std::max({std::abs(d_phi2), gain_phi, rhs_phi, Real(1e-30)});
    report.residual_phi.push_back(res_phi);
    if (res_phi > tolerance * scale_phi) ++bad_phi;

    const Real omega = recs[i].linf_omega;
    const Real d_omega2 =
        (sq(recs[i + 1].linf_omega) - sq(recs[i - 1].linf_omega)) / h2;
    const Real ur = lr_of(recs[i]);
    const Real gain_omega =
        ur > 0 ? c2 * std::pow(omega, 2 + omega_exp) / std::pow(ur, omega_exp)
               : 0;
    const Real rhs_omega = phi * omega;
    const Real res_omega = d_omega2 + gain_omega - rhs_omega;
    const Real scale_omega =
        std::max({std::abs(d_omega2), gain_omega, rhs_omega, Real(1e-30)});
    report.residual_omega.push_back(res_omega);
    if (res_omega > tolerance * scale_omega) ++bad_omega;
  }
  if (considered > 0) {
    report.violation_fraction_phi = Real(bad_phi) / considered;
    report.violation_fraction_omega = Real(bad_omega) / considered;
  }
  return report;
}

}  // namespace bsq
