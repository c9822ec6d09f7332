#include <doctest.h>

#include <cmath>
#include <limits>

#include "bsq/errors.hpp"
#include "bsq/inequality_checks.hpp"
#include "bsq/operators.hpp"
#include "bsq/oracles.hpp"

using namespace bsq;

namespace {

RealGrid eval_grid(const Grid& g, Real (*fn)(Real, Real)) {
  const int n = g.size();
  RealGrid out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = fn(kTwoPi * i / n, kTwoPi * j / n);
    }
  }
  return out;
}

Real rel_diff(const SpectralField& a, const SpectralField& b) {
  const Real scale = std::max(spectral_l2_norm(b), Real(1e-300));
  return spectral_l2_norm(a - b) / scale;
}

SpectralField make_sin_x1(const Grid& g, Real amp = 1) {
  SpectralField f(g);
  f.set_mode_pair(1, 0, Complex(0, -amp / 2));
  return f;
}

}  // namespace

TEST_CASE("grid validation and dealias mask") {
  CHECK_THROWS_AS(Grid(7), Error);
  CHECK_THROWS_AS(Grid(6), Error);
  const Grid g(16);
  // two-thirds rule: keep max(|xi1|, |xi2|) < 16/3, i.e. |xi_i| <= 5
  CHECK(g.dealias_mask()(g.index_of(5), g.index_of(5)));
  CHECK(!g.dealias_mask()(g.index_of(6), 0));
  CHECK(!g.dealias_mask()(0, g.index_of(-6)));
  CHECK(g.dealias_mask()(0, 0));
}

TEST_CASE("round trip and hermitian symmetry") {
  for (int n : {16, 32, 64}) {
    const Grid g(n);
    const SpectralField f = random_multiscale_field(g, 7 + n, 1.2);
    CHECK(hermitian_defect(f) == 0);
    const SpectralField back = to_spectral(to_physical(f), g);
    CHECK(rel_diff(back, f) < 1e-12);
    // Nyquist rows stay empty
    CHECK(f.coeffs.row(n / 2).abs().maxCoeff() == 0);
    CHECK(f.coeffs.col(n / 2).abs().maxCoeff() == 0);
  }
}

TEST_CASE("fractional laplacian examples") {
  const Grid g(16);
  const SpectralField s1 = make_sin_x1(g);

  // |xi| = 1 modes are fixed points of |xi|^s
  CHECK(rel_diff(fractional_laplacian(s1, 0.7), s1) < 1e-13);

  // cos(2 x1) with s = 1 -> 2 cos(2 x1)
  SpectralField c2(g);
  c2.set_mode_pair(2, 0, Complex(0.5, 0));
  CHECK(rel_diff(fractional_laplacian(c2, 1.0), 2 * c2) < 1e-13);

  // constants are annihilated
  SpectralField c(g);
  c.coeffs(0, 0) = Complex(3.25, 0);
  CHECK(spectral_l2_norm(fractional_laplacian(c, 0.5)) == 0);

  CHECK_THROWS_AS(
      fractional_laplacian(c, -0.5, /*strict_mean=*/true), Error);
  CHECK_THROWS_AS(fractional_laplacian(
                      s1, std::numeric_limits<Real>::quiet_NaN()),
                  Error);
}

TEST_CASE("fractional laplacian semigroup on zero-mean fields") {
  const Grid g(32);
  const SpectralField f = random_multiscale_field(g, 99, 1.0);
  for (auto [s1, s2] : {std::pair<Real, Real>{0.5, 0.5},
                        {-1.0, 2.0},
                        {-0.3, 0.9},
                        {1.5, -0.7}}) {
    const SpectralField a = fractional_laplacian(fractional_laplacian(f, s1), s2);
    const SpectralField b = fractional_laplacian(f, s1 + s2);
    CHECK(rel_diff(a, b) < 1e-10);
  }
}

TEST_CASE("riesz transform R_beta") {
  const Grid g(16);
  const SpectralField s1 = make_sin_x1(g);

  SpectralField c1(g);
  c1.set_mode_pair(1, 0, Complex(0.5, 0));
  CHECK(rel_diff(riesz_beta(s1, 0.4), c1) < 1e-13);  // acts as d/dx1 on |xi|=1

  SpectralField s2(g);
  s2.set_mode_pair(0, 1, Complex(0, -0.5));  // sin(x2): no x1 dependence
  CHECK(spectral_l2_norm(riesz_beta(s2, 0.4)) < 1e-15);

  SpectralField c2(g);
  c2.set_mode_pair(2, 0, Complex(0.5, 0));  // cos(2 x1)
  SpectralField expect(g);                  // -sqrt(2) sin(2 x1)
  expect.set_mode_pair(2, 0, Complex(0, std::sqrt(2.0) / 2));
  CHECK(rel_diff(riesz_beta(c2, 0.5), expect) < 1e-13);

  CHECK_THROWS_AS(riesz_beta(s1, 2.0), Error);
  CHECK_THROWS_AS(riesz_beta(s1, 0.0), Error);
}

TEST_CASE("biot-savart closed forms and identities") {
  const Grid g(32);

  SUBCASE("omega = sin(x1) -> u = (0, -cos(x1))") {
    const SpectralField w = make_sin_x1(g);
    const VelocityField u = biot_savart(w);
    CHECK(spectral_l2_norm(u.u1) < 1e-15);
    SpectralField expect(g);
    expect.set_mode_pair(1, 0, Complex(-0.5, 0));
    CHECK(rel_diff(u.u2, expect) < 1e-13);
  }

  SUBCASE("zero stays zero") {
    const VelocityField u = biot_savart(SpectralField(g));
    CHECK(spectral_l2_norm(u.u1) == 0);
    CHECK(spectral_l2_norm(u.u2) == 0);
  }

  SUBCASE("taylor-green: sin(x1) sin(x2)") {
    SpectralField w(g);
    w.set_mode_pair(1, 1, Complex(-0.25, 0));
    w.set_mode_pair(1, -1, Complex(0.25, 0));
    const VelocityField u = biot_savart(w);
    // u = (1/2 sin x1 cos x2, -1/2 cos x1 sin x2)
    const RealGrid u1 = eval_grid(g, [](Real x1, Real x2) {
      return 0.5 * std::sin(x1) * std::cos(x2);
    });
    const RealGrid u2 = eval_grid(g, [](Real x1, Real x2) {
      return -0.5 * std::cos(x1) * std::sin(x2);
    });
    CHECK((to_physical(u.u1) - u1).abs().maxCoeff() < 1e-13);
    CHECK((to_physical(u.u2) - u2).abs().maxCoeff() < 1e-13);
    CHECK(rel_diff(curl(u), w) < 1e-13);
  }

  SUBCASE("random: divergence-free and curl-inverse") {
    const SpectralField w = random_multiscale_field(g, 4242, 1.1);
    const VelocityField u = biot_savart(w);
    CHECK(divergence_defect(u) / spectral_l2_norm(w) < 1e-13);
    CHECK(rel_diff(curl(u), w) < 1e-12);
  }
}

TEST_CASE("velocity split sums to biot-savart of omega") {
  const Grid g(32);
  const Real beta = 0.7;
  const SpectralField gq = random_multiscale_field(g, 11, 1.2);
  const SpectralField th = random_multiscale_field(g, 12, 1.4);

  SUBCASE("theta = 0 reduces to biot_savart(G)") {
    auto [ug, ut] = velocity_split(gq, SpectralField(g), beta);
    CHECK(spectral_l2_norm(ut.u1) == 0);
    CHECK(rel_diff(ug.u2, biot_savart(gq).u2) == 0);
  }

  SUBCASE("sum identity") {
    auto [ug, ut] = velocity_split(gq, th, beta);
    const VelocityField full = biot_savart(gq + riesz_beta(th, beta));
    CHECK(rel_diff(ug.u1 + ut.u1, full.u1) < 1e-12);
    CHECK(rel_diff(ug.u2 + ut.u2, full.u2) < 1e-12);
  }

  SUBCASE("G = 0, theta = sin(x1): u_theta = (0, sin(x1))") {
    auto [ug, ut] = velocity_split(SpectralField(g), make_sin_x1(g), beta);
    (void)ug;
    SpectralField expect(g);
    expect.set_mode_pair(1, 0, Complex(0, -0.5));
    CHECK(spectral_l2_norm(ut.u1) < 1e-15);
    CHECK(rel_diff(ut.u2, expect) < 1e-13);
  }
}

TEST_CASE("dealiased product") {
  const Grid g(16);

  SUBCASE("multiplying by one applies the mask only") {
    SpectralField one(g);
    one.coeffs(0, 0) = Complex(1, 0);
    SpectralField f = random_multiscale_field(g, 3, 0.9);
    // include a mode outside the mask to see it stripped
    f.coeffs(g.index_of(6), g.index_of(0)) = Complex(1, 0);
    f.coeffs(g.index_of(-6), g.index_of(0)) = Complex(1, 0);
    SpectralField masked = f;
    apply_dealias(masked);
    CHECK(rel_diff(dealiased_product(one, f), masked) < 1e-13);
  }

  SUBCASE("sin(x1)^2 = 1/2 - cos(2 x1)/2") {
    const SpectralField s1 = make_sin_x1(g);
    SpectralField expect(g);
    expect.coeffs(0, 0) = Complex(0.5, 0);
    expect.set_mode_pair(2, 0, Complex(-0.25, 0));
    CHECK(rel_diff(dealiased_product(s1, s1), expect) < 1e-13);
  }

  SUBCASE("highest retained mode pair truncates to zero beyond the mask") {
    SpectralField f(g);
    f.set_mode_pair(5, 0, Complex(0.5, 0));  // cos(5 x1), 5 is the top mode
    const SpectralField prod = dealiased_product(f, f);
    // exact square is 1/2 + cos(10 x1)/2; only the mean survives the mask
    CHECK(std::abs(prod.mean() - Complex(0.5, 0)) < 1e-14);
    CHECK(spectral_l2_norm(prod - convolution_oracle(f, f)) < 1e-13);
  }

  SUBCASE("agrees with the O(N^4) convolution oracle on random fields") {
    for (int trial = 0; trial < 5; ++trial) {
      const SpectralField f = random_multiscale_field(g, 100 + trial, 0.8);
      const SpectralField h = random_multiscale_field(g, 200 + trial, 1.3);
      const SpectralField fast = dealiased_product(f, h);
      const SpectralField exact = convolution_oracle(f, h);
      CHECK((fast.coeffs - exact.coeffs).abs().maxCoeff() < 1e-12);
    }
  }

  SUBCASE("grid mismatch rejected") {
    CHECK_THROWS_AS(
        dealiased_product(SpectralField(Grid(16)), SpectralField(Grid(32))),
        Error);
  }
}

TEST_CASE("gradient, max, and Lp norms") {
  const Grid g(16);  // divisible by 4: the grid hits x1 = pi/2
  const SpectralField s1 = make_sin_x1(g);

  auto [d1, d2] = gradient(s1);
  SpectralField c1(g);
  c1.set_mode_pair(1, 0, Complex(0.5, 0));
  CHECK(rel_diff(d1, c1) < 1e-13);
  CHECK(spectral_l2_norm(d2) == 0);

  CHECK(physical_max_abs(s1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(lp_norm(s1, 2) ==
        doctest::Approx(std::sqrt(2 * kPi * kPi)).epsilon(1e-13));
  CHECK(lp_norm(SpectralField(g), 1) == 0);
  CHECK(lp_norm(SpectralField(g), std::numeric_limits<Real>::infinity()) == 0);
  CHECK_THROWS_AS(lp_norm(s1, 0.5), Error);

  // Parseval pins the transform normalization
  const SpectralField f = random_multiscale_field(g, 5, 1.0);
  const Real phys = lp_norm(f, 2);
  const Real spec = kTwoPi * std::sqrt(f.coeffs.abs2().sum());
  CHECK(std::abs(phys - spec) / spec < 1e-10);
}

TEST_CASE("zero_pad and restrict_to are inverse on band-limited fields") {
  const Grid coarse(16);
  const Grid fine(32);
  const SpectralField f = random_multiscale_field(coarse, 31, 1.0);
  const SpectralField padded = zero_pad(f, fine);
  // padding preserves the function: physical values agree on shared points
  const RealGrid fp = to_physical(f);
  const RealGrid pp = to_physical(padded);
  Real worst = 0;
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      worst = std::max(worst, std::abs(fp(i, j) - pp(2 * i, 2 * j)));
    }
  }
  CHECK(worst < 1e-12);
  CHECK(spectral_l2_norm(restrict_to(padded, coarse) - f) < 1e-14);
}
