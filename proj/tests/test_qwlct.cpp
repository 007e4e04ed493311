#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qwlct/generators.hpp"
#include "qwlct/qft.hpp"
#include "qwlct/qwlct.hpp"

using namespace qwlct;

namespace {

const double kPi = std::numbers::pi;

Grid2D paper_grid() { return Grid2D::centered(64, 2.0); }

double rel_l2(const QSignal2D& a, const QSignal2D& b) { return lp_norm(a - b, 2) / lp_norm(b, 2); }

}  // namespace

TEST(ModifiedSignal, Basics) {
  std::mt19937_64 rng(4);
  const Grid2D g = Grid2D::centered(16, 2.0);
  const auto f = random_signal(g, rng);
  const auto one = QSignal2D::constant(g, Quaternion::one());
  EXPECT_EQ(modified_signal(f, one, 0, 0).samples(), f.samples());
  const auto self = modified_signal(f, f, 0, 0);
  for (std::size_t t = 0; t < self.size(); ++t) {
    EXPECT_NEAR(self[t].q0, norm_sq(f[t]), 1e-14);
    EXPECT_NEAR(norm(self[t] - Quaternion(self[t].q0)), 0.0, 1e-15);
  }
  for (int t = 0; t < 20; ++t) {
    const auto a = random_signal(g, rng), phi = random_signal(g, rng);
    const auto fu = modified_signal(a, phi, 3 * g.dx1, -2 * g.dx2);
    EXPECT_LE(lp_norm(fu, 2), max_abs(a) * lp_norm(phi, 2) + 1e-12);
  }
  EXPECT_THROW(modified_signal(f, one, 0.3 * g.dx1, 0), Error);
}

TEST(Qwlct, SlicesMatchCompositionalPath) {
  std::mt19937_64 rng(21);
  const Grid2D g = Grid2D::centered(16, 2.0);
  const auto f = random_band_concentrated(g, rng);
  const auto phi = gaussian_window(g, 0.6, random_unit_quaternion(rng));
  const auto A1 = LCTParams::example(), A2 = LCTParams::shear();
  const Grid2D shift = default_shift_grid(g, 4);
  const auto G = qwlct_forward(f, phi, A1, A2, shift);
  ASSERT_EQ(G.values().size(), G.freq_grid().size() * 16);
  for (std::size_t u1 = 0; u1 < 4; ++u1)
    for (std::size_t u2 = 0; u2 < 4; ++u2) {
      const auto fu = modified_signal(f, phi, shift.x1(u1), shift.x2(u2));
      EXPECT_LE(max_component_diff(G.slice(u1, u2), qlct_forward(fu, A1, A2)), 1e-10);
    }
}

TEST(Qwlct, ChirpQftFactorization) {
  // Slice = left chirp constant * QFT of the pre-chirped modified signal at w / b * right constant.
  std::mt19937_64 rng(22);
  const Grid2D g = Grid2D::centered(16, 2.0);
  const auto f = random_signal(g, rng);
  const auto phi = gaussian_window(g, 0.7);
  const LCTParams A1(2, 0.5, -2, 0), A2 = LCTParams::example();
  const Grid2D shift = default_shift_grid(g, 8);
  const auto G = qwlct_forward(f, phi, A1, A2, shift);
  const auto fu = modified_signal(f, phi, shift.x1(1), shift.x2(0));
  const auto h = QSignal2D::sample(g, [&](double x1, double x2) {
    const std::size_t k1 = static_cast<std::size_t>(std::lround((x1 - g.x1_min) / g.dx1));
    const std::size_t k2 = static_cast<std::size_t>(std::lround((x2 - g.x2_min) / g.dx2));
    return exp_axis(ImagAxis::I, A1.a() * x1 * x1 / (2 * A1.b())) * fu.at(k1, k2) *
           exp_axis(ImagAxis::J, A2.a() * x2 * x2 / (2 * A2.b()));
  });
  const auto& W = G.freq_grid();
  for (std::size_t p = 0; p < W.n1; p += 3)
    for (std::size_t q = 0; q < W.n2; q += 5) {
      const double w1 = W.x1(p), w2 = W.x2(q);
      const Quaternion left = exp_axis(ImagAxis::I, A1.d() * w1 * w1 / (2 * A1.b()) - kPi / 4) /
                              std::sqrt(2 * kPi * A1.b());
      const Quaternion right = exp_axis(ImagAxis::J, A2.d() * w2 * w2 / (2 * A2.b()) - kPi / 4) /
                               std::sqrt(2 * kPi * A2.b());
      const Quaternion expect = left * qft_naive_at(h, w1 / A1.b(), w2 / A2.b()) * right;
      EXPECT_LE(max_abs_component(G.at(1, 0, p, q) - expect), 1e-10);
    }
}

TEST(Qwlct, BoundednessAndLinearity) {
  std::mt19937_64 rng(23);
  const Grid2D g = Grid2D::centered(16, 3.0);
  const std::vector<std::pair<LCTParams, LCTParams>> mats = {
      {LCTParams::example(), LCTParams::example()},
      {LCTParams::fourier(), LCTParams::shear()},
      {LCTParams(1, -2, 0, 1), LCTParams(-1, 3, -1, 2)}};
  for (const auto& [A1, A2] : mats)
    for (int t = 0; t < 3; ++t) {
      const auto f = random_signal(g, rng), q = random_signal(g, rng);
      const auto phi = gaussian_window(g, 1.0, random_unit_quaternion(rng));
      const auto shift = default_shift_grid(g, 4);
      const auto G = qwlct_forward(f, phi, A1, A2, shift);
      const double bound = lp_norm(f, 2) * lp_norm(phi, 2) / (2 * kPi * std::sqrt(std::fabs(A1.b() * A2.b())));
      EXPECT_LE(field_max_abs(G), bound + 1e-9);
      const auto Gq = qwlct_forward(q, phi, A1, A2, shift);
      const auto Gs = qwlct_forward(1.5 * f + (-0.25) * q, phi, A1, A2, shift);
      for (std::size_t i = 0; i < Gs.values().size(); ++i)
        EXPECT_LE(max_abs_component(Gs.values()[i] - (1.5 * G.values()[i] - 0.25 * Gq.values()[i])), 1e-12);
    }
}

TEST(Qwlct, ImpulseGivesKernelProduct) {
  const Grid2D g = Grid2D::centered(16, 2.0);
  const Quaternion q(0.5, -1, 2, 0.25);
  const std::size_t k1 = 9, k2 = 5;
  const auto f = impulse(g, k1, k2, q);
  const auto phi = QSignal2D::constant(g, Quaternion::one());
  const auto A1 = LCTParams::example(), A2 = LCTParams(2, -0.5, 0, 0.5);
  const Grid2D shift = default_shift_grid(g, 4);
  const auto G = qwlct_forward(f, phi, A1, A2, shift);
  const auto& W = G.freq_grid();
  // Shift (0, 0) keeps the whole window on the grid.
  for (std::size_t p = 0; p < W.n1; ++p)
    for (std::size_t r = 0; r < W.n2; ++r) {
      const auto expect = lct_kernel_left(A1, g.x1(k1), W.x1(p)) * q * lct_kernel_right(A2, g.x2(k2), W.x2(r));
      EXPECT_LE(max_abs_component(G.at(2, 2, p, r) - expect), 1e-12);
    }
}

TEST(Qwlct, Preconditions) {
  const Grid2D g = Grid2D::centered(16, 2.0);
  const auto f = impulse_at_origin(g);
  const auto zero = QSignal2D::constant(g, {});
  const auto A = LCTParams::example();
  EXPECT_THROW(qwlct_forward(f, zero, A, A, default_shift_grid(g, 4)), Error);
  EXPECT_THROW(qwlct_forward(f, f, LCTParams::identity(), A, default_shift_grid(g, 4)), Error);
  EXPECT_THROW(qwlct_forward(f, f, A, A, Grid2D(4, 4, 0.01, 0.5, 0, 0.5)), Error);
  EXPECT_THROW(default_shift_grid(g, 3), Error);
}

TEST(QwlctInverse, RoundTripAndRefinement) {
  std::mt19937_64 rng(24);
  const Grid2D g = Grid2D::centered(32, 4.0);
  const auto phi = gaussian_window(g, 0.5);
  const auto A = LCTParams::example();
  for (const auto& f : {make_paper_gaussian(g, {0.25}), random_band_concentrated(g, rng)}) {
    const auto coarse = qwlct_forward(f, phi, A, A, default_shift_grid(g, 2));
    const auto fine = qwlct_forward(f, phi, A, A, default_shift_grid(g, 1));
    const double e_coarse = rel_l2(qwlct_inverse(coarse, phi), f);
    const double e_fine = rel_l2(qwlct_inverse(fine, phi), f);
    EXPECT_LE(e_coarse, 2e-3);
    EXPECT_LE(e_fine, 0.5 * e_coarse);
  }
  const auto zero = QSignal2D::constant(g, {});
  const auto Z = qwlct_forward(zero, phi, A, A, default_shift_grid(g, 4));
  const auto back = qwlct_inverse(Z, phi);
  for (const auto& q : back.samples()) EXPECT_EQ(q, Quaternion{});
  EXPECT_THROW(qwlct_inverse(Z, zero), Error);
}

TEST(QwlctInverse, ThreadCountInvariant) {
  std::mt19937_64 rng(25);
  const Grid2D g = Grid2D::centered(16, 2.0);
  const auto f = random_signal(g, rng);
  const auto phi = gaussian_window(g, 0.5, random_unit_quaternion(rng));
  const auto A = LCTParams::shear();
  const auto shift = default_shift_grid(g, 2);
  const auto G1 = qwlct_forward(f, phi, A, A, shift, {1, "w"});
  const auto G3 = qwlct_forward(f, phi, A, A, shift, {3, "w"});
  EXPECT_EQ(G1.values(), G3.values());
  EXPECT_EQ(qwlct_inverse(G1, phi, 1).samples(), qwlct_inverse(G1, phi, 3).samples());
}

TEST(Parseval, PaperPair) {
  const Grid2D g = paper_grid();
  const auto f = make_paper_gaussian(g);
  const auto phi = make_paper_window(g);
  const auto A = LCTParams::example();
  const auto G = qwlct_forward(f, phi, A, A, default_shift_grid(g, 4));
  const auto r = parseval_check(f, phi, G);
  EXPECT_TRUE(r.satisfied) << r.lhs << " vs " << r.rhs;
  EXPECT_NEAR(field_energy(G) / (4 * kPi * kPi), 1.0, 1e-2);
  const auto Z = qwlct_forward(QSignal2D::constant(g, {}), phi, A, A, default_shift_grid(g, 4));
  EXPECT_EQ(field_energy(Z), 0.0);
}

TEST(Parseval, RandomSignalsConverge) {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 3; ++t) {
    const std::uint64_t s = rng();
    std::mt19937_64 r32(s), r64(s);
    const Grid2D g32 = Grid2D::centered(32, 4.0), g64 = Grid2D::centered(64, 4.0);
    const auto f32 = random_band_concentrated(g32, r32), f64 = random_band_concentrated(g64, r64);
    const auto p32 = gaussian_window(g32, 0.75), p64 = gaussian_window(g64, 0.75);
    const auto A = LCTParams::example();
    const auto G32 = qwlct_forward(f32, p32, A, A, default_shift_grid(g32, 4));
    const auto G64 = qwlct_forward(f64, p64, A, A, default_shift_grid(g64, 8));
    EXPECT_TRUE(parseval_check(f32, p32, G32, 2e-2).satisfied);
    EXPECT_TRUE(parseval_check(f64, p64, G64, 5e-3).satisfied);
  }
}

TEST(Parseval, PolarizedIdentities) {
  std::mt19937_64 rng(27);
  const Grid2D g = Grid2D::centered(32, 4.0);
  const auto f = random_band_concentrated(g, rng), h = random_band_concentrated(g, rng);
  const auto phi = gaussian_window(g, 0.6, random_unit_quaternion(rng));
  const auto psi = gaussian_window(g, 0.8, random_unit_quaternion(rng));
  const auto reports =
      polarized_parseval_checks(f, h, phi, psi, LCTParams::example(), LCTParams::shear(), default_shift_grid(g, 2));
  ASSERT_EQ(reports.size(), 4u);
  for (const auto& r : reports) {
    if (r.status != CheckStatus::Asserted) continue;
    EXPECT_TRUE(r.satisfied) << r.name << " " << r.lhs << " vs " << r.rhs;
  }
  EXPECT_EQ(reports[3].status, CheckStatus::Diagnostic);
  // Real or scalar-valued windows make the printed order agree as well.
  const auto real_w = polarized_parseval_checks(f, h, gaussian_window(g, 0.6), gaussian_window(g, 0.8),
                                                LCTParams::example(), LCTParams::example(), default_shift_grid(g, 2));
  EXPECT_TRUE(real_w[3].satisfied);
}

TEST(Covariance, PaperGaussianShiftAndModulation) {
  const Grid2D g = paper_grid();
  const auto f = make_paper_gaussian(g);
  const auto phi = make_paper_window(g);
  const auto A = LCTParams::example();
  const Grid2D shift = default_shift_grid(g, 4);
  const double dw = qlct_output_grid(g, A, A).dx1;
  const auto [sr, mr] = covariance_checks(f, phi, A, A, shift, shift.dx1, -shift.dx2, 2 * dw / A.b(), -dw / A.b());
  EXPECT_TRUE(sr.satisfied) << sr.lhs << " " << sr.rhs;
  EXPECT_TRUE(mr.satisfied) << mr.lhs << " " << mr.rhs;
  const auto [s0, m0] = covariance_checks(f, phi, A, A, shift, 0, 0, 0, 0);
  EXPECT_EQ(s0.lhs, 0.0);
  EXPECT_EQ(m0.lhs, 0.0);
  EXPECT_THROW(covariance_checks(f, phi, A, A, shift, 0.3 * shift.dx1, 0, 0, 0), Error);
}

TEST(Covariance, ShearMatrixWithAlignedLattice) {
  // a = 1 needs r on the w lattice too: dw = 2 pi b / (n dx) = dx when n dx^2 = 2 pi.
  const std::size_t n = 32;
  const double dx = std::sqrt(2 * kPi / n);
  const Grid2D g = Grid2D::centered(n, 0.5 * n * dx);
  const auto f = make_paper_gaussian(g, {0.25, 1.0, -0.5, SecondUnit::J});
  const auto phi = gaussian_window(g, 0.8);
  const auto A = LCTParams::shear();
  const Grid2D shift = default_shift_grid(g, 2);
  ASSERT_NEAR(qlct_output_grid(g, A, A).dx1, dx, 1e-12);
  const auto [sr, mr] = covariance_checks(f, phi, A, A, shift, shift.dx1, 2 * shift.dx2, dx, -dx);
  EXPECT_TRUE(sr.satisfied) << sr.lhs << " " << sr.rhs;
  EXPECT_TRUE(mr.satisfied) << mr.lhs << " " << mr.rhs;
}

TEST(Parity, RandomAndOdd) {
  std::mt19937_64 rng(29);
  const Grid2D g = Grid2D::symmetric(16, 0.25);
  const Grid2D shift = symmetric_shift_grid(5, 2, 0.25);
  const auto A1 = LCTParams::example(), A2 = LCTParams(2, -0.5, 0, 0.5);
  const auto f = random_signal(g, rng);
  const auto phi = gaussian_window(g, 0.5, random_unit_quaternion(rng));
  EXPECT_TRUE(parity_check(f, phi, A1, A2, shift).satisfied);
  const auto odd = QSignal2D::sample(g, [](double x1, double x2) {
    return Quaternion(x1 * std::exp(-x1 * x1 - x2 * x2), 0, 0.5 * x1, 0);
  });
  const auto even_w = gaussian_window(g, 0.5);
  const auto r = parity_check(odd, even_w, A1, A2, shift);
  EXPECT_TRUE(r.satisfied) << r.lhs;
  EXPECT_LE(r.lhs, 1e-9);
  EXPECT_THROW(parity_check(f, phi, A1, A2, default_shift_grid(Grid2D::centered(16, 2.0), 4)), Error);
}
