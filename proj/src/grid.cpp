#include "bsq/grid.hpp"

#include <cmath>

#include "bsq/errors.hpp"

namespace bsq {

Grid::Grid(int n) : n_(n) {
  if (n < 8 || n % 2 != 0) {
    throw Error("grid size must be even and >= 8, got " + std::to_string(n));
  }
  auto t = std::make_shared<Tables>();
  t->k1.resize(n, n);
  t->k2.resize(n, n);
  t->k_abs.resize(n, n);
  t->k_sq.resize(n, n);
  t->dealias.resize(n, n);
  t->dealias_w.resize(n, n);
  const Real cutoff = n / 3.0;
  for (int i = 0; i < n; ++i) {
    const int xi1 = wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int xi2 = wavenumber(j);
      t->k1(i, j) = xi1;
      t->k2(i, j) = xi2;
      const Real sq = Real(xi1) * xi1 + Real(xi2) * xi2;
      t->k_sq(i, j) = sq;
      t->k_abs(i, j) = std::sqrt(sq);
      const bool keep = std::max(std::abs(xi1), std::abs(xi2)) < cutoff;
      t->dealias(i, j) = keep;
      t->dealias_w(i, j) = keep ? 1.0 : 0.0;
    }
  }
  tables_ = std::move(t);
}

}  // namespace bsq
