#pragma once

#include <cstdint>
#include <vector>

#include "bsq/littlewood_paley.hpp"

namespace bsq {

// Random zero-mean field with spectrum |xi|^{-slope} x Gaussian draws,
// dealiased and L^2-normalized. Draws are keyed per mode.
SpectralField random_multiscale_field(const Grid& grid, std::uint64_t seed,
                                      Real slope);

// Random field spectrally supported on the annulus of block j.
SpectralField random_annulus_field(const DyadicBank& bank, int j,
                                   std::uint64_t seed);

// Gaussian-spectrum random field (solver-style smooth data) for censuses.
SpectralField random_smooth_field(const Grid& grid, std::uint64_t seed,
                                  Real xi0);

// -------- Bernstein inequalities --------

struct BernsteinPair {
  int k = 1;      // derivative order (0 or 1)
  Real a = 2;     // lower integrability
  Real b = 2;     // higher integrability, b >= a
};

struct BernsteinStats {
  int j = 0;
  int k = 0;
  Real a = 2, b = 2;
  Real min_ratio = 0, max_ratio = 0, geomean = 0;
  int trials = 0;
};

// For random annulus-j fields, ||d^k g||_{L^b} / (2^{jk + 2j(1/a - 1/b)} ||g||_{L^a}).
std::vector<BernsteinStats> bernstein_check(const DyadicBank& bank, int trials,
                                            int j_lo, int j_hi,
                                            const std::vector<BernsteinPair>& pairs,
                                            std::uint64_t seed);

// -------- Gagliardo-Nirenberg interpolation --------

struct GnReport {
  Real ratio_interp = 0;                        // Besov interpolation form
  std::vector<std::pair<Real, Real>> ratio_lg;  // (gamma, ratio) pairs
};

// Besov form: ||f||_{B^{1-beta}_{4,1}} <= C ||f||^lambda_{B^s_{2,2}}
// ||f||^{1-lambda}_{B^0_{inf,inf}}, lambda = (2 beta - 1)/(2 - 2s), for
// 1/2 < beta < 1 and 2 - 2 beta < s < (3 - 2 beta)/2. The gamma family:
// ||L^{gamma beta} f||_{L^{1/gamma}} <= C ||L^{beta/2} f||^{2 gamma}_{L^2}
// ||f||^{1-2 gamma}_{L^inf}, 0 < gamma < 1/2.
GnReport gn_interpolation_check(const SpectralField& f, Real beta, Real s,
                                const std::vector<Real>& gammas,
                                const DyadicBank& bank);

}  // namespace bsq
