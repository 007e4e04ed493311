#pragma once

// Independent reference implementations used only by the tests. They avoid
// the library's Hamilton-product formula, summation tree and FFT.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "qwlct/grid.hpp"
#include "qwlct/quaternion.hpp"
#include "qwlct/signal.hpp"

namespace oracle {

using qwlct::Grid2D;
using qwlct::Quaternion;
using qwlct::QSignal2D;

// Basis products e_a e_b = sign * e_c for the units (1, i, j, k).
struct BasisProduct {
  int sign;
  int index;
};

inline constexpr std::array<std::array<BasisProduct, 4>, 4> kTable{{
    {{{1, 0}, {1, 1}, {1, 2}, {1, 3}}},
    {{{1, 1}, {-1, 0}, {1, 3}, {-1, 2}}},
    {{{1, 2}, {-1, 3}, {-1, 0}, {1, 1}}},
    {{{1, 3}, {1, 2}, {-1, 1}, {-1, 0}}},
}};

inline std::array<long double, 4> comps(const Quaternion& q) { return {q.q0, q.q1, q.q2, q.q3}; }

inline std::array<long double, 4> mul_ld(const std::array<long double, 4>& p, const std::array<long double, 4>& q) {
  std::array<long double, 4> r{0, 0, 0, 0};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const auto e = kTable[a][b];
      r[e.index] += e.sign * p[a] * q[b];
    }
  return r;
}

inline Quaternion mul(const Quaternion& p, const Quaternion& q) {
  const auto r = mul_ld(comps(p), comps(q));
  return {static_cast<double>(r[0]), static_cast<double>(r[1]), static_cast<double>(r[2]),
          static_cast<double>(r[3])};
}

// e^{mu theta} as long double components; axis 1 = i, 2 = j.
inline std::array<long double, 4> expo(int unit, long double theta) {
  std::array<long double, 4> r{std::cos(theta), 0, 0, 0};
  r[unit] = std::sin(theta);
  return r;
}

// sum_x L(x1, w1) f(x) R(x2, w2) dx in long double, sequential order.
template <class Left, class Right>
Quaternion two_sided_sum(const QSignal2D& f, Left&& left, Right&& right) {
  const Grid2D& g = f.grid();
  std::array<long double, 4> acc{0, 0, 0, 0};
  for (std::size_t a = 0; a < g.n1; ++a) {
    const auto l = left(static_cast<long double>(g.x1_min) + static_cast<long double>(a) * g.dx1);
    for (std::size_t b = 0; b < g.n2; ++b) {
      const auto r = right(static_cast<long double>(g.x2_min) + static_cast<long double>(b) * g.dx2);
      const auto t = mul_ld(mul_ld(l, comps(f.at(a, b))), r);
      for (int c = 0; c < 4; ++c) acc[c] += t[c];
    }
  }
  const long double w = static_cast<long double>(g.dx1) * g.dx2;
  return {static_cast<double>(acc[0] * w), static_cast<double>(acc[1] * w), static_cast<double>(acc[2] * w),
          static_cast<double>(acc[3] * w)};
}

inline Quaternion qft_at(const QSignal2D& f, double w1, double w2) {
  return two_sided_sum(
      f, [&](long double x1) { return expo(1, -x1 * w1); }, [&](long double x2) { return expo(2, -x2 * w2); });
}

// LCT kernel for b != 0 with the |b| magnitude convention.
inline std::array<long double, 4> lct_kernel(int unit, long double a, long double b, long double d, long double x,
                                             long double w) {
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double phase = a * x * x / (2 * b) - x * w / b + d * w * w / (2 * b) - pi / 4;
  auto e = expo(unit, phase);
  const long double g = 1.0L / std::sqrt(2 * pi * std::fabs(b));
  for (auto& c : e) c *= g;
  return e;
}

inline double max_diff(const QSignal2D& a, const QSignal2D& b) {
  double m = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) m = std::fmax(m, qwlct::max_abs_component(a[t] - b[t]));
  return m;
}

inline double rel_l2_diff(const QSignal2D& a, const QSignal2D& b) {
  long double num = 0, den = 0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    num += qwlct::norm_sq(a[t] - b[t]);
    den += qwlct::norm_sq(b[t]);
  }
  return static_cast<double>(std::sqrt(num / den));
}

inline long double sum_sq(const QSignal2D& f) {
  long double s = 0;
  for (const auto& q : f.samples()) s += qwlct::norm_sq(q);
  return s * f.grid().cell_area();
}

}  // namespace oracle
