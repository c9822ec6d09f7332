#pragma once

#include <utility>

#include "bsq/spectral_field.hpp"
#include "bsq/transforms.hpp"

namespace bsq {

// Lambda^s: multiplier |xi|^s. The zero mode is annihilated for every s
// (0^s = 0 for s > 0; mean projection for s <= 0). With strict_mean set,
// s < 0 on a field with non-zero mean is rejected instead of projected.
SpectralField fractional_laplacian(const SpectralField& f, Real s,
                                   bool strict_mean = false);

// R_beta = d/dx1 Lambda^{-beta}: multiplier i xi1 |xi|^{-beta}, beta in (0,2).
SpectralField riesz_beta(const SpectralField& theta, Real beta);

// d/dx_axis (axis is 1 or 2): multiplier i xi_axis.
SpectralField derivative(const SpectralField& f, int axis);
std::pair<SpectralField, SpectralField> gradient(const SpectralField& f);

// u = grad^perp Lap^{-1} omega; the mean of omega is projected out.
VelocityField biot_savart(const SpectralField& omega);

// (u_G, u_theta) with u_G = grad^perp Lap^{-1} G and
// u_theta = grad^perp Lap^{-1} R_beta theta; the sum is biot_savart(omega).
std::pair<VelocityField, VelocityField> velocity_split(const SpectralField& G,
                                                       const SpectralField& theta,
                                                       Real beta);

// Pointwise product evaluated pseudo-spectrally with the two-thirds rule:
// alias-free for quadratic nonlinearities of dealiased inputs.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

Real physical_max_abs(const SpectralField& f);

// Equispaced-quadrature L^p norm: (2pi/N)^{2/p} (sum |f|^p)^{1/p};
// p = inf is the grid max. Exact for band-limited fields at p = 2.
Real lp_norm(const SpectralField& f, Real p);
Real lp_norm(const RealGrid& values, Real p);

// L^2 inner product (2pi)^2 Re sum f_hat conj(g_hat).
Real l2_inner(const SpectralField& f, const SpectralField& g);
// Parseval route for || . ||_{L^2}.
Real spectral_l2_norm(const SpectralField& f);

// Same function on a finer grid (coefficients copied by wavenumber).
SpectralField zero_pad(const SpectralField& f, const Grid& fine);
// Spectral truncation onto a coarser grid.
SpectralField restrict_to(const SpectralField& f, const Grid& coarse);

}  // namespace bsq
