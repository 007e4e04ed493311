#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qwlct/axis_transform.hpp"
#include "qwlct/error.hpp"
#include "qwlct/grid.hpp"
#include "qwlct/signal.hpp"
#include "qwlct/summation.hpp"

namespace qwlct {

/// Angular-frequency lattice of a spatial grid: w_k = 2 pi k' / (n dx) with
/// k' in [-n/2, n/2).
inline Grid2D freq_grid(const Grid2D& spatial) {
  return {chirp_output_axis(spatial.axis1(), 1.0), chirp_output_axis(spatial.axis2(), 1.0)};
}

// Checks that `freq` is the frequency lattice of `spatial`.
inline void require_freq_grid_of(const Grid2D& freq, const Grid2D& spatial) {
  const Grid2D expect = freq_grid(spatial);
  if (!same_grid(freq, expect, 1e-10))
    throw Error(ErrorKind::GridMismatch, "spectrum lattice is not derived from the given spatial grid");
}

enum class Padding { None, NextPowerOfTwo };

// Direct Riemann sum at one frequency pair.
inline Quaternion qft_naive_at(const QSignal2D& f, double w1, double w2) {
  const Grid2D& g = f.grid();
  std::vector<Quaternion> left(g.n1), right(g.n2);
  for (std::size_t a = 0; a < g.n1; ++a) left[a] = exp_axis(ImagAxis::I, -g.x1(a) * w1);
  for (std::size_t b = 0; b < g.n2; ++b) right[b] = exp_axis(ImagAxis::J, -g.x2(b) * w2);
  const Quaternion s = pairwise_sum<Quaternion>(g.size(), [&](std::size_t t) {
    return left[t / g.n2] * f[t] * right[t % g.n2];
  });
  return s * g.cell_area();
}

/// O(N^4) reference: sum_x e^{-i x1 w1} f(x) e^{-j x2 w2} dx1 dx2 on `lattice`.
inline QSignal2D qft_forward_naive(const QSignal2D& f, const Grid2D& lattice) {
  std::vector<Quaternion> out(lattice.size());
  for (std::size_t p = 0; p < lattice.n1; ++p)
    for (std::size_t q = 0; q < lattice.n2; ++q) out[lattice.index(p, q)] = qft_naive_at(f, lattice.x1(p), lattice.x2(q));
  return {lattice, std::move(out)};
}

inline QSignal2D qft_forward_naive(const QSignal2D& f) { return qft_forward_naive(f, freq_grid(f.grid())); }

namespace detail {

inline AxisPlan qft_axis(const Axis& x) { return AxisPlan(ChirpFourierAxis(x, ChirpSpec{})); }

inline QSignal2D zero_pad(const QSignal2D& f, std::size_t m1, std::size_t m2) {
  const Grid2D& g = f.grid();
  const Grid2D big(m1, m2, g.x1_min, g.dx1, g.x2_min, g.dx2);
  std::vector<Quaternion> s(big.size());
  for (std::size_t a = 0; a < g.n1; ++a)
    for (std::size_t b = 0; b < g.n2; ++b) s[big.index(a, b)] = f.at(a, b);
  return {big, std::move(s)};
}

}  // namespace detail

/// Separable FFT evaluation of the same sum on freq_grid(f.grid()). With
/// padding, the signal is zero-extended to a power of two and the central
/// n1 x n2 frequencies of the finer padded lattice are returned.
inline QSignal2D qft_forward_fast(const QSignal2D& f, Padding padding = Padding::None) {
  const Grid2D& g = f.grid();
  if (!is_power_of_two(g.n1) || !is_power_of_two(g.n2)) {
    if (padding == Padding::None)
      throw Error(ErrorKind::InvalidArgument, "fast QFT needs power-of-two sizes (enable padding)");
    const std::size_t m1 = next_power_of_two(g.n1), m2 = next_power_of_two(g.n2);
    const QSignal2D big = qft_forward_fast(detail::zero_pad(f, m1, m2));
    const Grid2D& bl = big.grid();
    const std::size_t o1 = m1 / 2 - g.n1 / 2, o2 = m2 / 2 - g.n2 / 2;
    const Grid2D crop(g.n1, g.n2, bl.x1(o1), bl.dx1, bl.x2(o2), bl.dx2);
    std::vector<Quaternion> s(crop.size());
    for (std::size_t a = 0; a < g.n1; ++a)
      for (std::size_t b = 0; b < g.n2; ++b) s[crop.index(a, b)] = big.at(o1 + a, o2 + b);
    return {crop, std::move(s)};
  }
  const AxisPlan p1 = detail::qft_axis(g.axis1()), p2 = detail::qft_axis(g.axis2());
  return {Grid2D(p1.output_axis(), p2.output_axis()),
          apply_two_sided(f.samples(), g.n1, g.n2, p1, p2, Direction::Forward)};
}

/// (2 pi)^-2 sum_w e^{+i x1 w1} F(w) e^{+j x2 w2} dw1 dw2 back on `spatial`.
inline QSignal2D qft_inverse(const QSignal2D& F, const Grid2D& spatial) {
  require_freq_grid_of(F.grid(), spatial);
  if (!is_power_of_two(spatial.n1) || !is_power_of_two(spatial.n2))
    throw Error(ErrorKind::InvalidArgument, "fast inverse QFT needs power-of-two sizes");
  const AxisPlan p1 = detail::qft_axis(spatial.axis1()), p2 = detail::qft_axis(spatial.axis2());
  return {spatial, apply_two_sided(F.samples(), spatial.n1, spatial.n2, p1, p2, Direction::Inverse)};
}

// Energy of a spectrum with the (2 pi)^-2 Plancherel weight.
inline double spectral_energy(const QSignal2D& F) { return energy(F) / (4.0 * std::numbers::pi * std::numbers::pi); }

}  // namespace qwlct
