#include "bsq/oracles.hpp"

#include <cmath>

#include "bsq/errors.hpp"

namespace bsq {

SpectralField convolution_oracle(const SpectralField& f,
                                 const SpectralField& g) {
  if (f.grid != g.grid) throw Error("grid mismatch between spectral fields");
  const Grid& grid = f.grid;
  const int n = grid.size();
  const int half = n / 2;

  SpectralField out(grid);
  for (int o1 = -half; o1 < half; ++o1) {
    for (int o2 = -half; o2 < half; ++o2) {
      if (std::max(std::abs(o1), std::abs(o2)) >= grid.dealias_cutoff()) {
        continue;
      }
      Complex acc(0, 0);
      for (int e1 = -half; e1 < half; ++e1) {
        const int r1 = o1 - e1;
        if (r1 < -half || r1 >= half) continue;
        for (int e2 = -half; e2 < half; ++e2) {
          const int r2 = o2 - e2;
          if (r2 < -half || r2 >= half) continue;
          acc += f.mode(e1, e2) * g.mode(r1, r2);
        }
      }
      out.coeffs(grid.index_of(o1), grid.index_of(o2)) = acc;
    }
  }
  return out;
}

Real direct_hs_norm(const SpectralField& f, Real s) {
  const Grid& grid = f.grid;
  const int n = grid.size();
  Real sum = 0;
  for (int i = 0; i < n; ++i) {
    const Real xi1 = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const Real xi2 = grid.wavenumber(j);
      sum += std::pow(1 + xi1 * xi1 + xi2 * xi2, s) * std::norm(f.coeffs(i, j));
    }
  }
  return kTwoPi * std::sqrt(sum);
}

}  // namespace bsq
