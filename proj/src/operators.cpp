#include "bsq/operators.hpp"

#include <cmath>
#include <limits>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid != b.grid) throw Error("grid mismatch between spectral fields");
}

}  // namespace

SpectralField fractional_laplacian(const SpectralField& f, Real s,
                                   bool strict_mean) {
  if (!std::isfinite(s)) throw Error("fractional exponent must be finite");
  if (strict_mean && s < 0 && std::abs(f.mean()) > 0) {
    throw Error("Lambda^s with s < 0 is ill-posed on a non-zero-mean field");
  }
  SpectralField out(f.grid);
  if (s == 0) {
    out.coeffs = f.coeffs;
  } else {
    out.coeffs = f.coeffs * f.grid.k_abs().pow(s).cast<Complex>();
  }
  out.coeffs(0, 0) = Complex(0, 0);  // 0^s = 0 (s > 0) or mean projection
  return out;
}

SpectralField riesz_beta(const SpectralField& theta, Real beta) {
  if (!(beta > 0 && beta < 2)) {
    throw Error("riesz_beta requires beta in (0, 2)");
  }
  const Grid& g = theta.grid;
  SpectralField out(g);
  const Complex i1(0, 1);
  out.coeffs = theta.coeffs * (i1 * g.k1().cast<Complex>()) *
               g.k_abs().pow(-beta).cast<Complex>();
  out.coeffs(0, 0) = Complex(0, 0);  // |0|^{-beta} -> mean projected out
  return out;
}

SpectralField derivative(const SpectralField& f, int axis) {
  if (axis != 1 && axis != 2) throw Error("derivative axis must be 1 or 2");
  const Grid& g = f.grid;
  const RealGrid& k = axis == 1 ? g.k1() : g.k2();
  const Complex i1(0, 1);
  return {g, f.coeffs * (i1 * k.cast<Complex>())};
}

std::pair<SpectralField, SpectralField> gradient(const SpectralField& f) {
  return {derivative(f, 1), derivative(f, 2)};
}

VelocityField biot_savart(const SpectralField& omega) {
  const Grid& g = omega.grid;
  // psi = Lap^{-1} omega with the zero mode projected out.
  RealGrid inv_ksq = (-g.k_sq()).cwiseMin(Real(-1)).cwiseInverse();
  ComplexGrid psi = omega.coeffs * inv_ksq.cast<Complex>();
  psi(0, 0) = Complex(0, 0);
  const Complex i1(0, 1);
  VelocityField u(g);
  u.u1.coeffs = -i1 * g.k2().cast<Complex>() * psi;
  u.u2.coeffs = i1 * g.k1().cast<Complex>() * psi;
  return u;
}

std::pair<VelocityField, VelocityField> velocity_split(const SpectralField& G,
                                                       const SpectralField& theta,
                                                       Real beta) {
  require_same_grid(G, theta);
  return {biot_savart(G), biot_savart(riesz_beta(theta, beta))};
}

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  SpectralField fm = f;
  SpectralField gm = g;
  apply_dealias(fm);
  apply_dealias(gm);
  RealGrid product = to_physical(fm) * to_physical(gm);
  SpectralField out = to_spectral(product, f.grid);
  apply_dealias(out);
  return out;
}

Real physical_max_abs(const SpectralField& f) {
  return to_physical(f).abs().maxCoeff();
}

Real lp_norm(const RealGrid& values, Real p) {
  if (std::isinf(p)) return values.abs().maxCoeff();
  if (!(p >= 1)) throw Error("lp_norm requires p >= 1");
  const Real n = static_cast<Real>(values.rows());
  const Real cell = kTwoPi / n;
  return std::pow(cell, 2 / p) * std::pow(values.abs().pow(p).sum(), 1 / p);
}

Real lp_norm(const SpectralField& f, Real p) {
  return lp_norm(to_physical(f), p);
}

Real l2_inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  return kTwoPi * kTwoPi * (f.coeffs * g.coeffs.conjugate()).sum().real();
}

Real spectral_l2_norm(const SpectralField& f) {
  return kTwoPi * std::sqrt(f.coeffs.abs2().sum());
}

SpectralField zero_pad(const SpectralField& f, const Grid& fine) {
  const int n = f.grid.size();
  if (fine.size() < n) throw Error("zero_pad target grid is smaller");
  SpectralField out(fine);
  for (int i = 0; i < n; ++i) {
    const int xi1 = f.grid.wavenumber(i);
    if (xi1 == -n / 2) continue;
    for (int j = 0; j < n; ++j) {
      const int xi2 = f.grid.wavenumber(j);
      if (xi2 == -n / 2) continue;
      out.coeffs(fine.index_of(xi1), fine.index_of(xi2)) = f.coeffs(i, j);
    }
  }
  return out;
}

SpectralField restrict_to(const SpectralField& f, const Grid& coarse) {
  const int n = coarse.size();
  if (f.grid.size() < n) throw Error("restrict_to target grid is larger");
  SpectralField out(coarse);
  for (int i = 0; i < n; ++i) {
    const int xi1 = coarse.wavenumber(i);
    if (xi1 == -n / 2) continue;
    for (int j = 0; j < n; ++j) {
      const int xi2 = coarse.wavenumber(j);
      if (xi2 == -n / 2) continue;
      out.coeffs(i, j) = f.mode(xi1, xi2);
    }
  }
  return out;
}

}  // namespace bsq
