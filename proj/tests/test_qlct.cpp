#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qwlct/generators.hpp"
#include "qwlct/qft.hpp"
#include "qwlct/qlct.hpp"

using namespace qwlct;

namespace {

const double kPi = std::numbers::pi;

Quaternion oracle_kernel_left(const LCTParams& A, double x, double w) {
  const auto k = oracle::lct_kernel(1, A.a(), A.b(), A.d(), x, w);
  return {static_cast<double>(k[0]), static_cast<double>(k[1]), static_cast<double>(k[2]),
          static_cast<double>(k[3])};
}

Quaternion oracle_qlct_at(const QSignal2D& f, const LCTParams& A1, const LCTParams& A2, double w1, double w2) {
  return oracle::two_sided_sum(
      f, [&](long double x1) { return oracle::lct_kernel(1, A1.a(), A1.b(), A1.d(), x1, w1); },
      [&](long double x2) { return oracle::lct_kernel(2, A2.a(), A2.b(), A2.d(), x2, w2); });
}

}  // namespace

TEST(LCTParams, DeterminantEnforced) {
  EXPECT_NO_THROW(LCTParams(0, 0.25, -4, 1));
  EXPECT_THROW(LCTParams(0, 0.25, -0.25, 1), Error);
  EXPECT_THROW(LCTParams(1, 0, 0, 1 + 1e-9), Error);
  EXPECT_TRUE(LCTParams::identity().is_degenerate());
  EXPECT_FALSE(LCTParams::example().is_degenerate());
  EXPECT_TRUE(LCTParams(1, 1e-301, 0, 1).is_degenerate());
}

TEST(LctKernel, ValuesAndSidedness) {
  const auto A = LCTParams::fourier();
  const auto k0 = lct_kernel_left(A, 0, 0);
  EXPECT_NEAR(k0.q0, std::cos(-kPi / 4) / std::sqrt(2 * kPi), 1e-15);
  EXPECT_NEAR(k0.q1, std::sin(-kPi / 4) / std::sqrt(2 * kPi), 1e-15);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (const auto& P : {LCTParams::example(), LCTParams::shear(), LCTParams(2, -0.5, 0, 0.5)}) {
    for (int t = 0; t < 100; ++t) {
      const double x = u(rng), w = u(rng);
      const auto kl = lct_kernel_left(P, x, w);
      const auto kr = lct_kernel_right(P, x, w);
      EXPECT_EQ(kl.q2, 0.0);
      EXPECT_EQ(kl.q3, 0.0);
      EXPECT_EQ(kr.q1, 0.0);
      EXPECT_EQ(kr.q3, 0.0);
      const double mag = 1 / std::sqrt(2 * kPi * std::fabs(P.b()));
      EXPECT_NEAR(norm(kl), mag, 1e-14);
      EXPECT_NEAR(norm(kr), mag, 1e-14);
      const auto kk = kl * conj(kl);
      EXPECT_NEAR(kk.q0, 1 / (2 * kPi * std::fabs(P.b())), 1e-14);
      EXPECT_NEAR(norm(kk - Quaternion(kk.q0)), 0.0, 1e-15);
      EXPECT_LE(max_abs_component(kl - oracle_kernel_left(P, x, w)), 1e-13);
    }
  }
  EXPECT_THROW(lct_kernel_left(LCTParams::identity(), 0, 0), Error);
}

TEST(Qlct, DirectSumMatchesOracle) {
  std::mt19937_64 rng(31);
  const Grid2D g(8, 8, -1.0, 0.25, -0.75, 0.2);
  const auto f = random_signal(g, rng);
  const auto A1 = LCTParams::example(), A2 = LCTParams(2, -0.5, 0, 0.5);
  const auto L = qlct_forward_direct(f, A1, A2);
  for (std::size_t p = 0; p < 8; ++p)
    for (std::size_t q = 0; q < 8; ++q)
      EXPECT_LE(max_abs_component(L.at(p, q) - oracle_qlct_at(f, A1, A2, L.grid().x1(p), L.grid().x2(q))), 1e-12);
}

TEST(Qlct, FastMatchesDirect) {
  std::mt19937_64 rng(42);
  const std::vector<std::pair<LCTParams, LCTParams>> mats = {
      {LCTParams::example(), LCTParams::example()},
      {LCTParams::fourier(), LCTParams::fourier()},
      {LCTParams::shear(), LCTParams::shear()},
      {LCTParams(2, -0.5, 0, 0.5), LCTParams(-1, 3, -1, 2)},
  };
  for (const auto& [A1, A2] : mats) {
    for (int t = 0; t < 5; ++t) {
      const Grid2D g(16, 16, -2.0, 0.25, -1.6, 0.2);
      const auto f = random_signal(g, rng);
      EXPECT_LE(max_component_diff(qlct_forward(f, A1, A2), qlct_forward_direct(f, A1, A2)), 1e-9);
    }
    const Grid2D g32 = Grid2D::centered(32, 3.0);
    const auto f = random_band_concentrated(g32, rng);
    EXPECT_LE(max_component_diff(qlct_forward(f, A1, A2), qlct_forward_direct(f, A1, A2)), 1e-9);
  }
}

TEST(Qlct, FourierReduction) {
  std::mt19937_64 rng(5);
  const Grid2D g = Grid2D::centered(16, 2.0);
  const auto f = random_signal(g, rng);
  const auto A = LCTParams::fourier();
  const auto L = qlct_forward(f, A, A);
  const auto F = qft_forward_fast(f);
  ASSERT_TRUE(same_grid(L.grid(), F.grid()));
  const Quaternion cl = exp_axis(ImagAxis::I, -kPi / 4) / std::sqrt(2 * kPi);
  const Quaternion cr = exp_axis(ImagAxis::J, -kPi / 4) / std::sqrt(2 * kPi);
  for (std::size_t t = 0; t < L.size(); ++t) EXPECT_LE(max_abs_component(L[t] - cl * F[t] * cr), 1e-9);
  // Inverse reduction: inverse QLCT equals the inverse QFT of the de-weighted spectrum.
  const auto back = qlct_inverse(L, A, A, g);
  const auto viaqft = qft_inverse(left_multiply(conj(cl) * (2 * kPi), right_multiply(L, conj(cr) * (2 * kPi))), g);
  EXPECT_LE(max_component_diff(back, viaqft), 1e-9);
}

TEST(Qlct, RoundTripAndUnitarity) {
  std::mt19937_64 rng(9);
  for (const auto& A : {LCTParams::example(), LCTParams::shear(), LCTParams(-1, -2, 0.5, 0)}) {
    const Grid2D g = Grid2D::centered(32, 4.0);
    const auto f = random_band_concentrated(g, rng);
    const auto L = qlct_forward(f, A, A);
    const auto back = qlct_inverse(L, A, A, g);
    EXPECT_LE(lp_norm(back - f, 2), 1e-7 * lp_norm(f, 2));
    EXPECT_NEAR(lp_norm(L, 2) / lp_norm(f, 2), 1.0, 1e-6);
  }
  const Grid2D g = Grid2D::centered(16, 2.0);
  const auto A = LCTParams::example();
  const auto zero = qlct_inverse(QSignal2D::constant(qlct_output_grid(g, A, A), {}), A, A, g);
  for (const auto& q : zero.samples()) EXPECT_EQ(q, Quaternion{});
  EXPECT_THROW(qlct_inverse(QSignal2D::constant(g, {}), A, A, g), Error);
  EXPECT_THROW(qlct_forward(zero, LCTParams::identity(), A), Error);
}

TEST(Qlct, NegativeBOutputLatticeAscending) {
  const Grid2D g = Grid2D::centered(16, 2.0);
  const auto A = LCTParams(1, -2, 0, 1);
  const auto out = qlct_output_grid(g, A, A);
  EXPECT_GT(out.dx1, 0.0);
  EXPECT_NEAR(out.dx1, 2 * 2 * kPi / (16 * g.dx1), 1e-12);
}

TEST(QlctDegenerate, IdentityAndScaling) {
  std::mt19937_64 rng(2);
  const Grid2D g = Grid2D::centered(16, 4.0);
  const auto f = random_signal(g, rng);
  const auto I = LCTParams::identity();
  const auto out = qlct_degenerate(f, I, I, true);
  EXPECT_EQ(out.samples(), f.samples());

  const LCTParams S(0.5, 0, 0, 2);
  const auto s = qlct_degenerate(f, S, S, false);
  // w = x_k; d w = 2 x_k sits on the lattice at index 2k - n/2.
  for (std::size_t p = 4; p < 12; ++p)
    for (std::size_t q = 4; q < 12; ++q) {
      const auto expect = 2.0 * f.at(2 * p - 8, 2 * q - 8);
      EXPECT_LE(max_abs_component(s.at(p, q) - expect), 1e-14);
      EXPECT_NEAR(norm(s.at(p, q)), 2.0 * norm(f.at(2 * p - 8, 2 * q - 8)), 1e-13);
    }
  EXPECT_EQ(s.at(0, 0), Quaternion{});
  EXPECT_THROW(qlct_degenerate(f, LCTParams(2, 0, 0, 0.5), I, true), Error);
  EXPECT_THROW(qlct_degenerate(f, LCTParams::example(), LCTParams::example()), Error);
}

TEST(QlctDegenerate, ChirpMagnitudeAndMixedAxes) {
  std::mt19937_64 rng(12);
  const Grid2D g = Grid2D::centered(16, 2.0);
  const auto f = random_signal(g, rng);
  const LCTParams D(-1, 0, 3, -1);
  const auto out = qlct_degenerate(f, D, D, true);
  for (std::size_t p = 1; p < 16; ++p)
    for (std::size_t q = 1; q < 16; ++q) {
      EXPECT_NEAR(norm(out.at(p, q)), norm(f.at(16 - p, 16 - q)), 1e-13);
      const double w1 = g.x1(p), w2 = g.x2(q);
      const auto expect = exp_axis(ImagAxis::I, -3 * w1 * w1 / 2) * f.at(16 - p, 16 - q) *
                          exp_axis(ImagAxis::J, -3 * w2 * w2 / 2);
      EXPECT_LE(max_abs_component(out.at(p, q) - expect), 1e-13);
    }
  const auto back = qlct_degenerate_inverse(out, D, D, g, true);
  for (std::size_t p = 1; p < 16; ++p)
    for (std::size_t q = 1; q < 16; ++q) EXPECT_LE(max_abs_component(back.at(p, q) - f.at(p, q)), 1e-13);

  // Regular left axis with an identity right axis is a 1D LCT on the left only.
  const auto A = LCTParams::example();
  const auto mixed = qlct_degenerate(f, A, LCTParams::identity());
  const auto& W = mixed.grid();
  for (std::size_t p = 0; p < 16; p += 3)
    for (std::size_t q = 0; q < 16; q += 5) {
      Quaternion ref;
      for (std::size_t a = 0; a < 16; ++a) ref += lct_kernel_left(A, g.x1(a), W.x1(p)) * f.at(a, q) * g.dx1;
      EXPECT_LE(max_abs_component(mixed.at(p, q) - ref), 1e-10);
    }
}
