#pragma once

#include <vector>

#include "bsq/operators.hpp"

namespace bsq {

// Dyadic frequency-localization masks built from a smooth radial cutoff chi
// (chi = 1 on |xi| <= 3/4, chi = 0 on |xi| >= 4/3) and phi(xi) =
// chi(xi/2) - chi(xi). Block -1 is chi(D); block j is phi(2^{-j} D) for
// j < j_max, and the top block closes the telescope so that the masks sum to
// one on every dealias-retained mode. All masks vanish off the dealias set.
struct DyadicBank {
  Grid grid;
  int j_min = -1;
  int j_max = 0;
  std::vector<RealGrid> masks;  // masks[j + 1] is the block-j multiplier

  DyadicBank() : grid(8) {}

  const RealGrid& mask(int j) const;
  int block_count() const { return static_cast<int>(masks.size()); }
};

// Smooth cutoff profile used for chi; exposed for tests.
Real smooth_cutoff(Real r);

DyadicBank build_bank(const Grid& grid);

// Delta_j f. j in [-1, j_max].
SpectralField dyadic_block(const SpectralField& f, int j, const DyadicBank& bank);

// S_j f = sum_{-1 <= k <= j-1} Delta_k f.
SpectralField low_pass(const SpectralField& f, int j, const DyadicBank& bank);

struct BesovIndex {
  Real s = 0;
  Real p = 2;
  Real r = 2;

  void validate() const;
};

// ( sum_{j >= -1} 2^{jrs} ||Delta_j f||_{L^p}^r )^{1/r}; sup over j at r = inf.
Real besov_norm(const SpectralField& f, const BesovIndex& idx,
                const DyadicBank& bank);

// Per-block contributions 2^{js} ||Delta_j f||_{L^p}, j = -1 .. j_max.
std::vector<Real> besov_block_terms(const SpectralField& f, Real s, Real p,
                                    const DyadicBank& bank);

// H^s via Parseval: ( (2pi)^2 sum (1+|xi|^2)^s |f_hat|^2 )^{1/2}.
Real sobolev_norm(const SpectralField& f, Real s);
// Homogeneous counterpart with weight |xi|^{2s}; requires zero mean when s < 0.
Real homogeneous_sobolev_norm(const SpectralField& f, Real s);

}  // namespace bsq
