#include "bsq/inequality_checks.hpp"

#include <cmath>
#include <limits>

#include "bsq/errors.hpp"
#include "bsq/random.hpp"

namespace bsq {

namespace {

Complex gaussian_draw(std::uint64_t seed, int xi1, int xi2) {
  SplitMix64 rng(mode_seed(seed, xi1, xi2));
  const Real u1 = rng.uniform();
  const Real u2 = rng.uniform();
  const Real rho = std::sqrt(-2 * std::log(1 - u1));
  return rho * Complex(std::cos(kTwoPi * u2), std::sin(kTwoPi * u2));
}

void fill_modes(SpectralField& f, std::uint64_t seed,
                const RealGrid& envelope) {
  const Grid& g = f.grid;
  const int n = g.size();
  for (int i = 0; i < n; ++i) {
    const int xi1 = g.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const int xi2 = g.wavenumber(j);
      if (xi1 < 0 || (xi1 == 0 && xi2 <= 0)) continue;  // half-plane
      const Real env = envelope(i, j);
      if (env == 0) continue;
      f.set_mode_pair(xi1, xi2, env * gaussian_draw(seed, xi1, xi2));
    }
  }
  apply_dealias(f);
  zero_nyquist(f);
}

}  // namespace

SpectralField random_multiscale_field(const Grid& grid, std::uint64_t seed,
                                      Real slope) {
  SpectralField f(grid);
  RealGrid envelope = grid.k_abs().pow(-slope) * grid.dealias_weights();
  envelope(0, 0) = 0;
  fill_modes(f, seed, envelope);
  const Real norm = spectral_l2_norm(f);
  if (norm > 0) f.coeffs *= Complex(1 / norm, 0);
  return f;
}

SpectralField random_annulus_field(const DyadicBank& bank, int j,
                                   std::uint64_t seed) {
  SpectralField f(bank.grid);
  fill_modes(f, seed, bank.mask(j));
  const Real norm = spectral_l2_norm(f);
  if (norm > 0) f.coeffs *= Complex(1 / norm, 0);
  return f;
}

SpectralField random_smooth_field(const Grid& grid, std::uint64_t seed,
                                  Real xi0) {
  SpectralField f(grid);
  RealGrid envelope =
      (-grid.k_sq() / (xi0 * xi0)).exp() * grid.dealias_weights();
  envelope(0, 0) = 0;
  fill_modes(f, seed, envelope);
  const Real norm = spectral_l2_norm(f);
  if (norm > 0) f.coeffs *= Complex(1 / norm, 0);
  return f;
}

std::vector<BernsteinStats> bernstein_check(const DyadicBank& bank, int trials,
                                            int j_lo, int j_hi,
                                            const std::vector<BernsteinPair>& pairs,
                                            std::uint64_t seed) {
  if (j_lo < 0 || j_hi > bank.j_max || j_lo > j_hi) {
    throw Error("bernstein_check: block range outside the bank");
  }
  for (const auto& p : pairs) {
    if (p.k < 0 || p.k > 1) throw Error("bernstein_check supports k in {0, 1}");
    if (!(p.a >= 1) || !(p.b >= p.a)) {
      throw Error("bernstein_check needs 1 <= a <= b");
    }
  }

  std::vector<BernsteinStats> out;
  for (int j = j_lo; j <= j_hi; ++j) {
    std::vector<BernsteinStats> per_pair(pairs.size());
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      per_pair[q].j = j;
      per_pair[q].k = pairs[q].k;
      per_pair[q].a = pairs[q].a;
      per_pair[q].b = pairs[q].b;
      per_pair[q].min_ratio = std::numeric_limits<Real>::infinity();
      per_pair[q].geomean = 0;
    }
    for (int trial = 0; trial < trials; ++trial) {
      const SpectralField g = random_annulus_field(
          bank, j, seed + 0x1000003ull * trial + 7919ull * j);
      const RealGrid gp = to_physical(g);
      auto [d1, d2] = gradient(g);
      const RealGrid grad_mag =
          (to_physical(d1).square() + to_physical(d2).square()).sqrt();
      for (std::size_t q = 0; q < pairs.size(); ++q) {
        const auto& p = pairs[q];
        const Real numer =
            p.k == 0 ? lp_norm(gp, p.b) : lp_norm(grad_mag, p.b);
        const Real i_a = std::isinf(p.a) ? 0 : 1 / p.a;
        const Real i_b = std::isinf(p.b) ? 0 : 1 / p.b;
        const Real scale = std::pow(2.0, j * p.k + 2.0 * j * (i_a - i_b));
        const Real denom = scale * lp_norm(gp, p.a);
        const Real ratio = denom > 0 ? numer / denom : 0;
        auto& st = per_pair[q];
        st.min_ratio = std::min(st.min_ratio, ratio);
        st.max_ratio = std::max(st.max_ratio, ratio);
        st.geomean += std::log(std::max(ratio, Real(1e-300)));
        ++st.trials;
      }
    }
    for (auto& st : per_pair) {
      if (st.trials > 0) st.geomean = std::exp(st.geomean / st.trials);
      out.push_back(st);
    }
  }
  return out;
}

GnReport gn_interpolation_check(const SpectralField& f, Real beta, Real s,
                                const std::vector<Real>& gammas,
                                const DyadicBank& bank) {
  if (!(beta > 0.5 && beta < 1)) {
    throw Error("gn_interpolation_check needs beta in (1/2, 1)");
  }
  if (!(s > 2 - 2 * beta && s < (3 - 2 * beta) / 2)) {
    throw Error("gn_interpolation_check needs 2-2b < s < (3-2b)/2");
  }
  const Real inf = std::numeric_limits<Real>::infinity();
  GnReport report;

  const Real lambda = (2 * beta - 1) / (2 - 2 * s);
  const Real lhs = besov_norm(f, {1 - beta, 4, 1}, bank);
  const Real b_s22 = besov_norm(f, {s, 2, 2}, bank);
  const Real b_0inf = besov_norm(f, {0, inf, inf}, bank);
  const Real rhs = std::pow(b_s22, lambda) * std::pow(b_0inf, 1 - lambda);
  report.ratio_interp = rhs > 0 ? lhs / rhs : 0;

  const Real f_linf = physical_max_abs(f);
  const Real f_hbeta2 = homogeneous_sobolev_norm(f, beta / 2);
  for (Real gamma : gammas) {
    if (!(gamma > 0 && gamma < 0.5)) {
      throw Error("gn_interpolation_check needs gamma in (0, 1/2)");
    }
    const Real num = lp_norm(fractional_laplacian(f, gamma * beta), 1 / gamma);
    const Real den =
        std::pow(f_hbeta2, 2 * gamma) * std::pow(f_linf, 1 - 2 * gamma);
    report.ratio_lg.emplace_back(gamma, den > 0 ? num / den : 0);
  }
  return report;
}

}  // namespace bsq
