#pragma once

#include <memory>

#include "bsq/types.hpp"

namespace bsq {

// Periodic grid on [0, 2pi)^2 with N points per axis. Wavenumbers are the
// integer lattice {-N/2, ..., N/2-1}^2 in FFT index order; the unmatched
// Nyquist rows (xi_i = -N/2) are kept identically zero by the transform
// layer. The dealias mask retains modes with max(|xi1|, |xi2|) < N/3.
class Grid {
 public:
  explicit Grid(int n);

  int size() const { return n_; }
  Real period() const { return kTwoPi; }
  Real spacing() const { return kTwoPi / n_; }

  // FFT index -> signed wavenumber.
  int wavenumber(int idx) const { return idx < n_ / 2 ? idx : idx - n_; }
  // Signed wavenumber in [-N/2, N/2) -> FFT index.
  int index_of(int xi) const { return xi >= 0 ? xi : xi + n_; }

  Real dealias_cutoff() const { return n_ / 3.0; }

  // Per-mode tables, shared between all fields on this grid.
  const RealGrid& k1() const { return tables_->k1; }
  const RealGrid& k2() const { return tables_->k2; }
  const RealGrid& k_abs() const { return tables_->k_abs; }
  const RealGrid& k_sq() const { return tables_->k_sq; }
  const BoolGrid& dealias_mask() const { return tables_->dealias; }
  // dealias_mask() cast to Real (1 retained / 0 zeroed), handy in expressions.
  const RealGrid& dealias_weights() const { return tables_->dealias_w; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_; }
  friend bool operator!=(const Grid& a, const Grid& b) { return a.n_ != b.n_; }

 private:
  struct Tables {
    RealGrid k1, k2, k_abs, k_sq, dealias_w;
    BoolGrid dealias;
  };

  int n_ = 0;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace bsq
