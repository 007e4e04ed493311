#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "qwlct/error.hpp"
#include "qwlct/grid.hpp"
#include "qwlct/quaternion.hpp"
#include "qwlct/summation.hpp"

namespace qwlct {

/// Quaternion samples on a Grid2D, row-major with axis 1 major.
/// Immutable once built; every operation returns a new signal.
class QSignal2D {
 public:
  QSignal2D() = default;

  explicit QSignal2D(const Grid2D& grid) : grid_(grid), samples_(grid.size()) { grid_.validate(); }

  QSignal2D(const Grid2D& grid, std::vector<Quaternion> samples) : grid_(grid), samples_(std::move(samples)) {
    grid_.validate();
    if (samples_.size() != grid_.size())
      throw Error(ErrorKind::InvalidArgument, "sample count does not match grid");
    for (const auto& q : samples_)
      if (!is_finite(q)) throw Error(ErrorKind::NonFinite, "signal contains NaN or Inf");
  }

  template <class Fn>
  static QSignal2D sample(const Grid2D& grid, Fn&& fn) {
    std::vector<Quaternion> s(grid.size());
    for (std::size_t a = 0; a < grid.n1; ++a)
      for (std::size_t b = 0; b < grid.n2; ++b) s[grid.index(a, b)] = fn(grid.x1(a), grid.x2(b));
    return {grid, std::move(s)};
  }

  static QSignal2D constant(const Grid2D& grid, const Quaternion& q) {
    return {grid, std::vector<Quaternion>(grid.size(), q)};
  }

  const Grid2D& grid() const { return grid_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<Quaternion>& samples() const { return samples_; }
  const Quaternion& operator[](std::size_t i) const { return samples_[i]; }
  const Quaternion& at(std::size_t k1, std::size_t k2) const { return samples_.at(grid_.index(k1, k2)); }

 private:
  Grid2D grid_;
  std::vector<Quaternion> samples_;
};

// Elementwise combination of two signals on the same grid.
template <class Op>
QSignal2D zip_with(const QSignal2D& f, const QSignal2D& g, Op&& op) {
  require_same_grid(f.grid(), g.grid(), "signals live on different grids");
  std::vector<Quaternion> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i], g[i]);
  return {f.grid(), std::move(out)};
}

template <class Op>
QSignal2D map_samples(const QSignal2D& f, Op&& op) {
  std::vector<Quaternion> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i]);
  return {f.grid(), std::move(out)};
}

inline QSignal2D operator+(const QSignal2D& f, const QSignal2D& g) {
  return zip_with(f, g, [](const Quaternion& a, const Quaternion& b) { return a + b; });
}
inline QSignal2D operator-(const QSignal2D& f, const QSignal2D& g) {
  return zip_with(f, g, [](const Quaternion& a, const Quaternion& b) { return a - b; });
}
inline QSignal2D operator*(double s, const QSignal2D& f) {
  return map_samples(f, [s](const Quaternion& q) { return s * q; });
}
inline QSignal2D left_multiply(const Quaternion& p, const QSignal2D& f) {
  return map_samples(f, [&p](const Quaternion& q) { return p * q; });
}
inline QSignal2D right_multiply(const QSignal2D& f, const Quaternion& p) {
  return map_samples(f, [&p](const Quaternion& q) { return q * p; });
}

inline double lp_norm(const QSignal2D& f, double s) {
  if (std::isinf(s) && s > 0) {
    double m = 0.0;
    for (const auto& q : f.samples()) m = std::fmax(m, norm(q));
    return m;
  }
  if (!(s >= 1.0)) throw Error(ErrorKind::InvalidArgument, "lp_norm requires s >= 1");
  const auto& v = f.samples();
  double total;
  if (s == 2.0) {
    total = pairwise_sum(v.size(), [&](std::size_t i) { return norm_sq(v[i]); });
    return std::sqrt(total * f.grid().cell_area());
  }
  total = pairwise_sum(v.size(), [&](std::size_t i) { return std::pow(norm(v[i]), s); });
  return std::pow(total * f.grid().cell_area(), 1.0 / s);
}

inline double energy(const QSignal2D& f) {
  const auto& v = f.samples();
  return pairwise_sum(v.size(), [&](std::size_t i) { return norm_sq(v[i]); }) * f.grid().cell_area();
}

inline double max_abs(const QSignal2D& f) { return lp_norm(f, std::numeric_limits<double>::infinity()); }

// Largest component difference; the transform oracles compare with this.
inline double max_component_diff(const QSignal2D& f, const QSignal2D& g) {
  if (f.size() != g.size()) throw Error(ErrorKind::GridMismatch, "size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::fmax(m, max_abs_component(f[i] - g[i]));
  return m;
}

inline Quaternion inner_product(const QSignal2D& f, const QSignal2D& g) {
  require_same_grid(f.grid(), g.grid(), "inner product of signals on different grids");
  const auto& a = f.samples();
  const auto& b = g.samples();
  return pairwise_sum<Quaternion>(a.size(), [&](std::size_t i) { return a[i] * conj(b[i]); }) *
         f.grid().cell_area();
}

inline double scalar_inner(const QSignal2D& f, const QSignal2D& g) {
  require_same_grid(f.grid(), g.grid(), "inner product of signals on different grids");
  const auto& a = f.samples();
  const auto& b = g.samples();
  return pairwise_sum(a.size(),
                      [&](std::size_t i) {
                        return a[i].q0 * b[i].q0 + a[i].q1 * b[i].q1 + a[i].q2 * b[i].q2 + a[i].q3 * b[i].q3;
                      }) *
         f.grid().cell_area();
}

enum class Boundary { Zero, Periodic };

// (f*g)(y) = sum_x f(x) g(y-x) dx. The lattice difference y - x must again
// be a lattice point, which holds when the origin lies on the lattice.
inline QSignal2D convolve(const QSignal2D& f, const QSignal2D& g, Boundary boundary = Boundary::Zero) {
  const Grid2D& gr = f.grid();
  require_same_grid(gr, g.grid(), "convolution of signals on different grids");
  const auto o1 = lattice_index(gr.x1_min, gr.dx1);
  const auto o2 = lattice_index(gr.x2_min, gr.dx2);
  if (!o1 || !o2) throw Error(ErrorKind::NotLatticeAligned, "convolution needs the origin on the lattice");
  const long long n1 = static_cast<long long>(gr.n1);
  const long long n2 = static_cast<long long>(gr.n2);
  std::vector<Quaternion> out(gr.size());
  for (long long y1 = 0; y1 < n1; ++y1) {
    for (long long y2 = 0; y2 < n2; ++y2) {
      // g(y - x) sits at index y - x - x_min/dx.
      auto term = [&](std::size_t t) -> Quaternion {
        const long long x1 = static_cast<long long>(t) / n2;
        const long long x2 = static_cast<long long>(t) % n2;
        long long p1 = y1 - x1 - *o1;
        long long p2 = y2 - x2 - *o2;
        if (boundary == Boundary::Periodic) {
          p1 = ((p1 % n1) + n1) % n1;
          p2 = ((p2 % n2) + n2) % n2;
        } else if (p1 < 0 || p1 >= n1 || p2 < 0 || p2 >= n2) {
          return {};
        }
        return f[static_cast<std::size_t>(t)] * g[static_cast<std::size_t>(p1 * n2 + p2)];
      };
      out[static_cast<std::size_t>(y1 * n2 + y2)] = pairwise_sum<Quaternion>(gr.size(), term) * gr.cell_area();
    }
  }
  return {gr, std::move(out)};
}

// Integer sample shift (m1, m2) with zero fill: out[k] = f[k - m].
inline QSignal2D shift_samples(const QSignal2D& f, long long m1, long long m2) {
  const Grid2D& gr = f.grid();
  const long long n1 = static_cast<long long>(gr.n1);
  const long long n2 = static_cast<long long>(gr.n2);
  std::vector<Quaternion> out(gr.size());
  for (long long a = 0; a < n1; ++a) {
    const long long s1 = a - m1;
    if (s1 < 0 || s1 >= n1) continue;
    for (long long b = 0; b < n2; ++b) {
      const long long s2 = b - m2;
      if (s2 < 0 || s2 >= n2) continue;
      out[static_cast<std::size_t>(a * n2 + b)] = f[static_cast<std::size_t>(s1 * n2 + s2)];
    }
  }
  return {gr, std::move(out)};
}

inline QSignal2D translate(const QSignal2D& f, double r1, double r2) {
  const auto m1 = lattice_index(r1, f.grid().dx1);
  const auto m2 = lattice_index(r2, f.grid().dx2);
  if (!m1 || !m2) throw Error(ErrorKind::NotLatticeAligned, "translation must be a multiple of the grid spacing");
  return shift_samples(f, *m1, *m2);
}

inline QSignal2D modulate(const QSignal2D& f, double s1, double s2) {
  const Grid2D& gr = f.grid();
  std::vector<Quaternion> out(gr.size());
  for (std::size_t a = 0; a < gr.n1; ++a) {
    const Quaternion left = exp_axis(ImagAxis::I, gr.x1(a) * s1);
    for (std::size_t b = 0; b < gr.n2; ++b) {
      const Quaternion right = exp_axis(ImagAxis::J, gr.x2(b) * s2);
      out[gr.index(a, b)] = left * f.at(a, b) * right;
    }
  }
  return {gr, std::move(out)};
}

// P f(x) = f(-x) on a mirror-symmetric grid.
inline QSignal2D reflect(const QSignal2D& f) {
  const Grid2D& gr = f.grid();
  if (!gr.is_symmetric()) throw Error(ErrorKind::InvalidArgument, "reflection needs an origin-symmetric grid");
  std::vector<Quaternion> out(gr.size());
  for (std::size_t a = 0; a < gr.n1; ++a)
    for (std::size_t b = 0; b < gr.n2; ++b) out[gr.index(a, b)] = f.at(gr.n1 - 1 - a, gr.n2 - 1 - b);
  return {gr, std::move(out)};
}

inline QSignal2D conj(const QSignal2D& f) {
  return map_samples(f, [](const Quaternion& q) { return conj(q); });
}

}  // namespace qwlct
