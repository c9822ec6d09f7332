#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsq/littlewood_paley.hpp"
#include "bsq/solver.hpp"

namespace bsq {

// -------- regime classification --------

enum class Criticality { Supercritical, Critical, Subcritical };

std::string to_string(Criticality c);

struct RegimeInfo {
  Criticality criticality;
  Real beta_star;
  bool covered;  // beta > beta_star
};

// Well-posedness frontier: beta* = max{2/3, (4-a^2)/(4+3a)} for a <= 2/3,
// (2-a)/2 for a >= 2/3; requires alpha, beta in (0, 1).
RegimeInfo regime_classify(Real alpha, Real beta);
Real beta_star(Real alpha);

// -------- proof-tracked fields --------

// G = omega - R_beta theta.
SpectralField combined_quantity(const FlowState& state, Real beta);

// [R_beta, u . grad] theta = R_beta(u . grad theta) - u . grad(R_beta theta),
// advective-form products.
SpectralField commutator_rbeta(const VelocityField& u, const SpectralField& theta,
                               Real beta);
// Independent route through the divergence form u . grad f = div(u f).
SpectralField commutator_rbeta_divform(const VelocityField& u,
                                       const SpectralField& theta, Real beta);

// LHS/RHS of the commutator estimate
// ||[R_beta, u.grad]theta||_{L^p} <= C(||grad u||_{L^p1} ||theta||_{B^{1-beta}_{p2,1}}
//                                      + ||u||_{L^r} ||theta||_{L^2}).
// Requires 1/p = 1/p1 + 1/p2 with p in [2, inf).
Real commutator_estimate_ratio(const VelocityField& u, const SpectralField& theta,
                               Real beta, Real p, Real p1, Real p2,
                               Real r = 4, const DyadicBank* bank = nullptr);

// Frobenius magnitude of the velocity gradient on the grid.
RealGrid velocity_gradient_magnitude(const VelocityField& u);
Real grad_u_linf(const VelocityField& u);
Real velocity_lp_norm(const VelocityField& u, Real p);

// -------- pointwise lower-bound checks --------

struct PointwiseReport {
  Real min_defect = 0;        // min_x D(x); >= -roundoff by the pointwise bound
  Real scale = 0;             // max_x |D| for relative floors
  std::optional<Real> maxpoint_ratio;  // D(x~) ||f||^b / |grad f(x~)|^{2+b}
};

// D = grad theta . Lambda^beta grad theta - (1/2) Lambda^beta |grad theta|^2,
// evaluated alias-free on a twice-refined grid; the ratio is taken at the
// argmax of |grad theta| (p = inf form of the nonlinear lower bound).
PointwiseReport pointwise_bound_check(const SpectralField& theta, Real beta);

// Scalar analogue D = f Lambda^alpha f - (1/2) Lambda^alpha f^2 with the
// max-point ratio weighted by ||u||_{L^r}^{alpha r/(2+r)} (vorticity form).
PointwiseReport pointwise_bound_check_scalar(const SpectralField& f, Real alpha,
                                             Real weight_norm, Real r);

// -------- BKM-type logarithmic inequality --------

// ||grad u||_inf / (1 + ||u||_2 + ||omega||_inf ln(e + ||u||_{H^s_ref})).
Real log_inequality_ratio(const FlowState& state, Real s_ref);

// -------- trajectory diagnostics --------

struct DiagnosticsConfig {
  Real varrho = 0;   // Case-1 exponent, in [0, beta/2)
  Real delta = 0;    // Case-2 exponent, in [0, beta/2)
  std::vector<Real> r_list{2, 4, 8};
  Real s_ref = 2.5;
  Real tolerance = 1e-4;

  static DiagnosticsConfig defaults(Real alpha, Real beta);
  void validate(Real alpha, Real beta) const;
};

struct DiagnosticsRecord {
  Real t = 0;
  Real l2_theta = 0;
  Real l4_theta = 0;
  Real linf_theta = 0;
  Real l2_u = 0;
  Real h_half_beta_theta_sq_cum = 0;  // int_0^t ||Lambda^{beta/2} theta||^2
  Real l2_G = 0;
  Real h_varrho_theta = 0;
  Real l2_omega = 0;
  Real h_delta_theta = 0;
  Real linf_grad_theta = 0;  // Phi
  Real linf_omega = 0;       // Omega
  std::vector<Real> lr_u;    // per r in r_list
  Real grad_u_linf = 0;
  Real log_ineq_residual = 0;
  Real pointwise_bound_min = 0;
  Real maxpoint_ratio_theta = 0;  // NaN when |grad theta| vanishes at argmax
  Real ladder_g = 0;      // ||G||^2 + ||L^varrho theta||^2 + dissipation integral
  Real ladder_omega = 0;  // ||omega||^2 + ||L^delta theta||^2 + integral
  Real res_theta_energy = 0;      // signed; positive = violation
  Real res_theta_maxprin = 0;
  Real res_u_energy = 0;
  Real bal_theta_energy = 0;  // sharp discrete balance defects
  Real bal_u_energy = 0;

  bool finite() const;
};

// Streaming monitor: feed states in time order (run() does this at the
// sampling cadence); cumulative integrals use trapezoidal quadrature.
class DiagnosticsMonitor {
 public:
  DiagnosticsMonitor(const SolverConfig& solver, DiagnosticsConfig cfg);

  void sample(const FlowState& state);
  SampleCallback callback();

  const std::vector<DiagnosticsRecord>& records() const { return records_; }
  const DiagnosticsConfig& config() const { return cfg_; }

  static std::vector<std::string> csv_columns(const std::vector<Real>& r_list);
  void write_csv(const std::string& path) const;

 private:
  SolverConfig solver_;
  DiagnosticsConfig cfg_;
  std::vector<DiagnosticsRecord> records_;

  bool have_initial_ = false;
  Real theta0_l2 = 0, theta0_linf = 0, u0_l2 = 0;
  Real prev_t_ = 0;
  Real prev_diss_theta_ = 0;   // ||Lambda^{beta/2} theta||^2
  Real prev_diss_u_ = 0;       // ||Lambda^{alpha/2} u||^2
  Real prev_buoy_ = 0;         // 2 <theta, u2>
  Real prev_diss_G_ = 0;       // ||Lambda^{alpha/2} G||^2
  Real prev_diss_theta_rho_ = 0;
  Real prev_diss_omega_ = 0;
  Real prev_diss_theta_delta_ = 0;
  Real cum_diss_theta_ = 0;
  Real cum_diss_u_ = 0;
  Real cum_buoy_ = 0;
  Real cum_ladder_g_int_ = 0;
  Real cum_ladder_omega_int_ = 0;
};

// -------- series-level monitors --------

struct LadderStats {
  Real final_value = 0;
  Real max_value = 0;
  Real log_slope_last_half = 0;  // d(log E)/dt fitted on the last half
};

LadderStats ladder_stats(const std::vector<Real>& times,
                         const std::vector<Real>& values);

// Energy ladders extracted from a record stream: the combined-quantity form
// (attached below the beta* branch point) and the vorticity form (above it).
std::vector<Real> g_ladder_series(const std::vector<DiagnosticsRecord>& recs);
std::vector<Real> omega_ladder_series(const std::vector<DiagnosticsRecord>& recs);
std::vector<Real> record_times(const std::vector<DiagnosticsRecord>& recs);

// Sobolev interpolation cross-check for the velocity L^r monitor:
// ||u||_{L^r} <= C(r) ||u||_{L^2}^{2/r} ||omega||_{L^2}^{1-2/r}. Returns the
// per-sample ratios, i.e. the empirical C(r); requires r >= 2.
std::vector<Real> velocity_lr_interpolation_ratios(
    const std::vector<DiagnosticsRecord>& recs, int r_index, Real r);

struct MaxnormOdeReport {
  std::vector<Real> residual_phi;    // signed, positive = violation
  std::vector<Real> residual_omega;
  Real violation_fraction_phi = 0;   // fraction above tolerance * scale
  Real violation_fraction_omega = 0;
  Real c1 = 0, c2 = 0;               // empirical constants used
};

// Centered-difference check of the max-point ODE inequalities along a sampled
// trajectory; c1/c2 are empirical floors (e.g. from pointwise censuses) and
// r_index selects the ||u||_{L^r} column of the records.
MaxnormOdeReport maxnorm_ode_monitor(const std::vector<DiagnosticsRecord>& recs,
                                     Real alpha, Real beta, Real r, int r_index,
                                     Real theta0_linf, Real c1, Real c2,
                                     Real tolerance = 1e-3);

}  // namespace bsq
