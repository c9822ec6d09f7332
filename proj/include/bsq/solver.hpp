#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bsq/operators.hpp"

namespace bsq {

enum class Integrator { ImexEuler, EtdRk2, EtdRk4 };

std::string to_string(Integrator i);
Integrator integrator_from_string(const std::string& name);

struct SolverConfig {
  Real alpha = 0.8;
  Real beta = 0.7;
  Real nu = 1.0;
  Real kappa = 1.0;
  int n = 64;
  Real dt = 1e-3;
  Real horizon = 1.0;
  Integrator integrator = Integrator::EtdRk4;
  Real cfl_safety = 0.5;
  std::uint64_t seed = 0;
  int samples_per_unit_time = 100;
  // Keep sampled states in the Trajectory (tests); sweeps switch this off
  // and stream diagnostics instead.
  bool store_states = true;

  void validate() const;
};

struct FlowState {
  SpectralField omega;  // vorticity, zero mean
  SpectralField theta;  // temperature, mean conserved
  Real t = 0;

  FlowState() = default;
  explicit FlowState(const Grid& g) : omega(g), theta(g) {}
};

struct BlowUpFlag {
  bool flagged = false;
  Real t = 0;
  std::string reason;
};

struct Trajectory {
  std::vector<FlowState> states;
  SolverConfig config;
  BlowUpFlag blow_up;
};

// Non-stiff right-hand sides of the vorticity-temperature system:
// (-dealiased(u . grad omega) + d theta/dx1, -dealiased(u . grad theta)).
// The dissipative terms -nu Lambda^alpha omega, -kappa Lambda^beta theta are
// applied exactly by the integrator's exponential factors.
std::pair<SpectralField, SpectralField> rhs(const FlowState& state,
                                            const SolverConfig& cfg);

// Largest dt admitted by the advective CFL bound for this state.
Real cfl_max_dt(const FlowState& state, const SolverConfig& cfg);

// One step of the configured scheme. Throws CflViolation when cfg.dt exceeds
// the advective bound; NaN/Inf is reported through run()'s blow-up flag.
FlowState step(const FlowState& state, const SolverConfig& cfg);

enum class InitKind { TaylorGreen, RandomSmooth, ShearBubble };

std::string to_string(InitKind k);
InitKind init_kind_from_string(const std::string& name);

FlowState make_initial_data(InitKind kind, const Grid& grid, std::uint64_t seed,
                            Real amplitude);

// Restart data from a ".bsq" snapshot (omega and theta blocks required);
// fields are dealiased and the vorticity mean is projected out. t starts at 0.
FlowState state_from_snapshot(const std::string& path);

using SampleCallback = std::function<void(const FlowState&)>;

// Integrates to cfg.horizon (or until blow-up / CFL rejection, which set the
// flag instead of throwing). Monitors fire at the sampling cadence, including
// t = 0 and the final state. Deterministic for fixed (cfg, init).
Trajectory run(const SolverConfig& cfg, const FlowState& init,
               const std::vector<SampleCallback>& monitors = {});

}  // namespace bsq
