#include "bsq/spectral_field.hpp"

#include "bsq/errors.hpp"

namespace bsq {

namespace {

void require_same_grid(const SpectralField& a, const SpectralField& b) {
  if (a.grid != b.grid) throw Error("grid mismatch between spectral fields");
}

}  // namespace

void SpectralField::set_mode_pair(int xi1, int xi2, Complex value) {
  coeffs(grid.index_of(xi1), grid.index_of(xi2)) = value;
  if (xi1 != 0 || xi2 != 0) {
    coeffs(grid.index_of(-xi1), grid.index_of(-xi2)) = std::conj(value);
  }
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  return {a.grid, a.coeffs + b.coeffs};
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  return {a.grid, a.coeffs - b.coeffs};
}

SpectralField operator*(Real s, const SpectralField& f) {
  return {f.grid, s * f.coeffs};
}

SpectralField operator-(const SpectralField& f) { return {f.grid, -f.coeffs}; }

Real hermitian_defect(const SpectralField& f) {
  const int n = f.grid.size();
  Real defect = 0;
  for (int i = 0; i < n; ++i) {
    const int im = (n - i) % n;
    for (int j = 0; j < n; ++j) {
      const int jm = (n - j) % n;
      defect = std::max(defect,
                        std::abs(f.coeffs(im, jm) - std::conj(f.coeffs(i, j))));
    }
  }
  return defect;
}

void enforce_hermitian(SpectralField& f) {
  const int n = f.grid.size();
  for (int i = 0; i < n; ++i) {
    const int im = (n - i) % n;
    for (int j = 0; j < n; ++j) {
      const int jm = (n - j) % n;
      if (i * n + j > im * n + jm) continue;  // visit each pair once
      const Complex avg =
          Real(0.5) * (f.coeffs(i, j) + std::conj(f.coeffs(im, jm)));
      f.coeffs(i, j) = avg;
      f.coeffs(im, jm) = std::conj(avg);
    }
  }
  f.coeffs(0, 0) = Complex(f.coeffs(0, 0).real(), 0);
  zero_nyquist(f);
}

void zero_nyquist(SpectralField& f) {
  const int n = f.grid.size();
  f.coeffs.row(n / 2).setZero();
  f.coeffs.col(n / 2).setZero();
}

void apply_dealias(SpectralField& f) {
  f.coeffs = f.grid.dealias_mask().select(f.coeffs, Complex(0, 0));
}

bool all_finite(const SpectralField& f) {
  return f.coeffs.abs2().isFinite().all();
}

Real divergence_defect(const VelocityField& u) {
  const Grid& g = u.u1.grid;
  return (g.k1().cast<Complex>() * u.u1.coeffs +
          g.k2().cast<Complex>() * u.u2.coeffs)
      .abs()
      .maxCoeff();
}

SpectralField curl(const VelocityField& u) {
  const Grid& g = u.u1.grid;
  const Complex i1(0, 1);
  return {g, i1 * (g.k1().cast<Complex>() * u.u2.coeffs -
                   g.k2().cast<Complex>() * u.u1.coeffs)};
}

}  // namespace bsq
