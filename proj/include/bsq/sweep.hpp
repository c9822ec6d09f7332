#pragma once

#include <string>
#include <vector>

#include "bsq/config.hpp"

namespace bsq {

struct CellResult {
  Real alpha = 0, beta = 0, beta_star = 0;
  std::string regime;
  bool covered = false;
  std::string verdict;  // BOUNDED | GROWING | UNRESOLVED | ERROR
  bool resolution_stable = false;
  Real max_linf_omega = 0;
  Real max_linf_grad_theta = 0;
  Real max_l2_G = 0;
  Real max_res_energy_laws = 0;  // worst of the three displayed energy residuals
  Real ladder_g_final = 0, ladder_omega_final = 0;
  Real ladder_g_slope = 0, ladder_omega_slope = 0;
  Real ladder_g_coarse = 0, ladder_omega_coarse = 0;
  std::string status;  // "ok" or a failure note
};

// Executes every (alpha, beta) cell of the sweep; cells are independent and
// deterministic per cell seed, so the atlas does not depend on scheduling.
std::vector<CellResult> run_sweep(const SweepSpec& spec, int workers);

void write_atlas_csv(const std::string& path,
                     const std::vector<CellResult>& cells);

}  // namespace bsq
