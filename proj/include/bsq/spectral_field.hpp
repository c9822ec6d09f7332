#pragma once

#include <utility>

#include "bsq/grid.hpp"

namespace bsq {

// Real scalar field on the torus stored as complex Fourier-series
// coefficients: f(x) = sum_xi coeffs(xi) e^{i xi.x}. Realness is encoded by
// the Hermitian symmetry coeffs(-xi) = conj(coeffs(xi)).
struct SpectralField {
  Grid grid;
  ComplexGrid coeffs;

  SpectralField() : grid(8) { coeffs = ComplexGrid::Zero(8, 8); }
  explicit SpectralField(const Grid& g)
      : grid(g), coeffs(ComplexGrid::Zero(g.size(), g.size())) {}
  SpectralField(const Grid& g, ComplexGrid c) : grid(g), coeffs(std::move(c)) {}

  Complex mode(int xi1, int xi2) const {
    return coeffs(grid.index_of(xi1), grid.index_of(xi2));
  }
  // Sets f_hat(xi) and the conjugate partner so the field stays real.
  void set_mode_pair(int xi1, int xi2, Complex value);

  Complex mean() const { return coeffs(0, 0); }
  void project_mean() { coeffs(0, 0) = Complex(0, 0); }
};

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(Real s, const SpectralField& f);
SpectralField operator-(const SpectralField& f);

// max_xi |coeffs(-xi) - conj(coeffs(xi))| over matched modes.
Real hermitian_defect(const SpectralField& f);
// Averages matched pairs so the symmetry holds exactly; zeroes Nyquist rows.
void enforce_hermitian(SpectralField& f);
void zero_nyquist(SpectralField& f);
void apply_dealias(SpectralField& f);
bool all_finite(const SpectralField& f);

// Divergence-free velocity pair (u1, u2) in spectral space.
struct VelocityField {
  SpectralField u1, u2;

  VelocityField() = default;
  explicit VelocityField(const Grid& g) : u1(g), u2(g) {}
  VelocityField(SpectralField a, SpectralField b)
      : u1(std::move(a)), u2(std::move(b)) {}
};

// max_xi |xi1 u1_hat + xi2 u2_hat|, zero for exactly solenoidal fields.
Real divergence_defect(const VelocityField& u);
// d1 u2 - d2 u1.
SpectralField curl(const VelocityField& u);

}  // namespace bsq
