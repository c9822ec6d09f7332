#include "bsq/littlewood_paley.hpp"

#include <cmath>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

// exp(-1/t) glued to 0: the standard mollifier building block.
Real bump(Real t) { return t > 0 ? std::exp(-1 / t) : Real(0); }

}  // namespace

// C^inf, equal to 1 for r <= 3/4, 0 for r >= 4/3, strictly decreasing between.
Real smooth_cutoff(Real r) {
  const Real t = (r - 0.75) / (4.0 / 3.0 - 0.75);
  const Real rise = bump(1 - t);
  const Real fall = bump(t);
  return rise / (rise + fall);
}

const RealGrid& DyadicBank::mask(int j) const {
  if (j < -1 || j > j_max) {
    throw Error("dyadic block index " + std::to_string(j) + " out of range");
  }
  return masks[static_cast<std::size_t>(j + 1)];
}

DyadicBank build_bank(const Grid& grid) {
  DyadicBank bank;
  bank.grid = grid;

  // Largest j with (3/4) 2^j <= N/3; j_max >= 1 for every valid grid.
  int j_max = 0;
  while (0.75 * std::pow(2.0, j_max + 1) <= grid.dealias_cutoff()) ++j_max;
  bank.j_max = j_max;

  const RealGrid& k = grid.k_abs();
  const RealGrid& retained = grid.dealias_weights();

  std::vector<RealGrid> chi_scaled;  // chi(2^{-j} xi), j = 0 .. j_max
  for (int j = 0; j <= j_max; ++j) {
    const Real scale = std::pow(2.0, -j);
    chi_scaled.push_back(
        (scale * k).unaryExpr([](Real r) { return smooth_cutoff(r); }));
  }

  bank.masks.push_back(chi_scaled[0] * retained);  // Delta_{-1}
  for (int j = 0; j < j_max; ++j) {
    bank.masks.push_back((chi_scaled[j + 1] - chi_scaled[j]) * retained);
  }
  // Top block: telescope remainder, so the masks add to exactly one on the
  // retained set (the square dealias corners exceed (3/4) 2^{j_max+1}).
  bank.masks.push_back((1 - chi_scaled[j_max]) * retained);
  return bank;
}

SpectralField dyadic_block(const SpectralField& f, int j,
                           const DyadicBank& bank) {
  if (f.grid != bank.grid) throw Error("field grid does not match bank grid");
  return {f.grid, f.coeffs * bank.mask(j).cast<Complex>()};
}

SpectralField low_pass(const SpectralField& f, int j, const DyadicBank& bank) {
  if (f.grid != bank.grid) throw Error("field grid does not match bank grid");
  if (j < -1 || j > bank.j_max + 1) throw Error("low_pass index out of range");
  SpectralField out(f.grid);
  for (int k = -1; k < j; ++k) {
    out.coeffs += f.coeffs * bank.mask(k).cast<Complex>();
  }
  return out;
}

void BesovIndex::validate() const {
  if (!std::isfinite(s)) throw Error("Besov smoothness must be finite");
  if (!(p >= 1) || !(r >= 1)) {
    throw Error("Besov integrability indices must satisfy p, r >= 1");
  }
}

std::vector<Real> besov_block_terms(const SpectralField& f, Real s, Real p,
                                    const DyadicBank& bank) {
  std::vector<Real> terms;
  terms.reserve(static_cast<std::size_t>(bank.j_max + 2));
  for (int j = -1; j <= bank.j_max; ++j) {
    terms.push_back(std::pow(2.0, j * s) * lp_norm(dyadic_block(f, j, bank), p));
  }
  return terms;
}

Real besov_norm(const SpectralField& f, const BesovIndex& idx,
                const DyadicBank& bank) {
  idx.validate();
  const std::vector<Real> terms = besov_block_terms(f, idx.s, idx.p, bank);
  if (std::isinf(idx.r)) {
    Real sup = 0;
    for (Real t : terms) sup = std::max(sup, t);
    return sup;
  }
  Real sum = 0;
  for (Real t : terms) sum += std::pow(t, idx.r);
  return std::pow(sum, 1 / idx.r);
}

Real sobolev_norm(const SpectralField& f, Real s) {
  const RealGrid weight = (1 + f.grid.k_sq()).pow(s);
  return kTwoPi * std::sqrt((weight * f.coeffs.abs2()).sum());
}

Real homogeneous_sobolev_norm(const SpectralField& f, Real s) {
  if (s < 0 && std::abs(f.mean()) > 1e-14) {
    throw Error("homogeneous Sobolev norm with s < 0 needs zero-mean data");
  }
  RealGrid weight = f.grid.k_abs().pow(2 * s);
  weight(0, 0) = 0;
  return kTwoPi * std::sqrt((weight * f.coeffs.abs2()).sum());
}

}  // namespace bsq
