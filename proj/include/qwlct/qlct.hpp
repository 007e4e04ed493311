#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qwlct/axis_transform.hpp"
#include "qwlct/error.hpp"
#include "qwlct/grid.hpp"
#include "qwlct/lct_params.hpp"
#include "qwlct/signal.hpp"
#include "qwlct/summation.hpp"

namespace qwlct {

// Kernel constants for b != 0. Negative b keeps a positive magnitude
// 1/sqrt(2 pi |b|); its sign only enters through the x w / b term.
inline ChirpSpec lct_chirp_spec(const LCTParams& A) {
  if (A.is_degenerate()) throw Error(ErrorKind::DegenerateParams, "kernel form requires b != 0");
  const double b = A.b();
  return {A.a() / (2.0 * b), b, A.d() / (2.0 * b), -0.25 * std::numbers::pi,
          1.0 / std::sqrt(2.0 * std::numbers::pi * std::fabs(b))};
}

namespace detail {

inline cplx lct_kernel_value(const LCTParams& A, double x, double w) {
  const ChirpSpec s = lct_chirp_spec(A);
  return s.gain * unit_phase(s.pre * x * x - x * w / s.b + s.post * w * w + s.phase);
}

}  // namespace detail

/// Left kernel, valued in span{1, i}.
inline Quaternion lct_kernel_left(const LCTParams& A1, double x1, double w1) {
  const cplx k = detail::lct_kernel_value(A1, x1, w1);
  return {k.real(), k.imag(), 0.0, 0.0};
}

/// Right kernel, valued in span{1, j}.
inline Quaternion lct_kernel_right(const LCTParams& A2, double x2, double w2) {
  const cplx k = detail::lct_kernel_value(A2, x2, w2);
  return {k.real(), 0.0, k.imag(), 0.0};
}

inline Axis lct_output_axis(const Axis& x, const LCTParams& A) {
  return A.is_degenerate() ? x : chirp_output_axis(x, A.b());
}

/// Output lattice: the QFT lattice scaled by |b| per axis (the input lattice
/// on a degenerate axis).
inline Grid2D qlct_output_grid(const Grid2D& spatial, const LCTParams& A1, const LCTParams& A2) {
  return {lct_output_axis(spatial.axis1(), A1), lct_output_axis(spatial.axis2(), A2)};
}

inline AxisPlan make_lct_plan(const Axis& x, const LCTParams& A, bool strict = false) {
  if (A.is_degenerate()) return AxisPlan(ScalingAxis(x, A.c(), A.d(), strict));
  return AxisPlan(ChirpFourierAxis(x, lct_chirp_spec(A)));
}

/// Precomputed per-axis plans for a fixed spatial grid and matrix pair.
class QLCTPlan {
 public:
  QLCTPlan(const Grid2D& spatial, const LCTParams& A1, const LCTParams& A2, bool strict = false)
      : spatial_(spatial),
        A1_(A1),
        A2_(A2),
        left_(make_lct_plan(spatial.axis1(), A1, strict)),
        right_(make_lct_plan(spatial.axis2(), A2, strict)),
        out_(left_.output_axis(), right_.output_axis()) {
    if (!is_power_of_two(spatial.n1) || !is_power_of_two(spatial.n2)) {
      if (!A1.is_degenerate() || !A2.is_degenerate())
        throw Error(ErrorKind::InvalidArgument, "fast QLCT needs power-of-two sizes");
    }
  }

  const Grid2D& spatial() const { return spatial_; }
  const Grid2D& output_grid() const { return out_; }
  const LCTParams& a1() const { return A1_; }
  const LCTParams& a2() const { return A2_; }

  std::vector<Quaternion> forward(const std::vector<Quaternion>& f) const {
    return apply_two_sided(f, spatial_.n1, spatial_.n2, left_, right_, Direction::Forward);
  }
  std::vector<Quaternion> inverse(const std::vector<Quaternion>& F) const {
    return apply_two_sided(F, spatial_.n1, spatial_.n2, left_, right_, Direction::Inverse);
  }

  QSignal2D forward(const QSignal2D& f) const {
    require_same_grid(f.grid(), spatial_, "signal grid differs from the plan grid");
    return {out_, forward(f.samples())};
  }
  QSignal2D inverse(const QSignal2D& F) const {
    if (!same_grid(F.grid(), out_, 1e-10))
      throw Error(ErrorKind::GridMismatch, "spectrum is not on the LCT output lattice of this grid");
    return {spatial_, inverse(F.samples())};
  }

 private:
  Grid2D spatial_;
  LCTParams A1_, A2_;
  AxisPlan left_, right_;
  Grid2D out_;
};

inline void require_nondegenerate(const LCTParams& A1, const LCTParams& A2) {
  if (A1.is_degenerate() || A2.is_degenerate())
    throw Error(ErrorKind::DegenerateParams, "b1 and b2 must be nonzero (use qlct_degenerate for b = 0)");
}

/// Chirp, separable FFT, chirp.
inline QSignal2D qlct_forward(const QSignal2D& f, const LCTParams& A1, const LCTParams& A2) {
  require_nondegenerate(A1, A2);
  return QLCTPlan(f.grid(), A1, A2).forward(f);
}

/// Literal double Riemann sum of K1(x1,w1) f(x) K2(x2,w2) dx on the output lattice.
inline QSignal2D qlct_forward_direct(const QSignal2D& f, const LCTParams& A1, const LCTParams& A2) {
  require_nondegenerate(A1, A2);
  const Grid2D& g = f.grid();
  const Grid2D out = qlct_output_grid(g, A1, A2);
  std::vector<Quaternion> res(out.size());
  std::vector<Quaternion> left(g.n1), right(g.n2);
  for (std::size_t p = 0; p < out.n1; ++p) {
    const double w1 = out.x1(p);
    for (std::size_t a = 0; a < g.n1; ++a) left[a] = lct_kernel_left(A1, g.x1(a), w1);
    for (std::size_t q = 0; q < out.n2; ++q) {
      const double w2 = out.x2(q);
      for (std::size_t b = 0; b < g.n2; ++b) right[b] = lct_kernel_right(A2, g.x2(b), w2);
      res[out.index(p, q)] =
          pairwise_sum<Quaternion>(g.size(), [&](std::size_t t) { return left[t / g.n2] * f[t] * right[t % g.n2]; }) *
          g.cell_area();
    }
  }
  return {out, std::move(res)};
}

/// Conjugated kernels summed over the output lattice, back onto `spatial`.
inline QSignal2D qlct_inverse(const QSignal2D& F, const LCTParams& A1, const LCTParams& A2, const Grid2D& spatial) {
  require_nondegenerate(A1, A2);
  return QLCTPlan(spatial, A1, A2).inverse(F);
}

/// Transform with at least one b = 0 axis; the other axis may be regular.
inline QSignal2D qlct_degenerate(const QSignal2D& f, const LCTParams& A1, const LCTParams& A2, bool strict = false) {
  if (!A1.is_degenerate() && !A2.is_degenerate())
    throw Error(ErrorKind::InvalidArgument, "qlct_degenerate needs at least one b = 0 axis");
  return QLCTPlan(f.grid(), A1, A2, strict).forward(f);
}

inline QSignal2D qlct_degenerate_inverse(const QSignal2D& F, const LCTParams& A1, const LCTParams& A2,
                                         const Grid2D& spatial, bool strict = false) {
  if (!A1.is_degenerate() && !A2.is_degenerate())
    throw Error(ErrorKind::InvalidArgument, "qlct_degenerate_inverse needs at least one b = 0 axis");
  return QLCTPlan(spatial, A1, A2, strict).inverse(F);
}

}  // namespace qwlct
