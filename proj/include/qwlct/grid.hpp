#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qwlct/error.hpp"

namespace qwlct {

/// One uniform sampling axis: coordinate k is min + k*step.
struct Axis {
  std::size_t n = 0;
  double min = 0.0;
  double step = 1.0;

  double coord(std::size_t k) const { return min + static_cast<double>(k) * step; }
  double extent() const { return static_cast<double>(n) * step; }

  friend bool operator==(const Axis&, const Axis&) = default;
};

// Index m with value = m*step, if value sits on the lattice to within
// tol*step. Used for shifts and lattice-aligned offsets.
inline std::optional<long long> lattice_index(double value, double step, double tol = 1e-9) {
  const double r = value / step;
  const double m = std::nearbyint(r);
  if (std::fabs(r - m) > tol) return std::nullopt;
  return static_cast<long long>(m);
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

struct Grid2D {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double x1_min = 0.0;
  double dx1 = 1.0;
  double x2_min = 0.0;
  double dx2 = 1.0;

  Grid2D() = default;
  Grid2D(std::size_t n1_, std::size_t n2_, double x1_min_, double dx1_, double x2_min_, double dx2_)
      : n1(n1_), n2(n2_), x1_min(x1_min_), dx1(dx1_), x2_min(x2_min_), dx2(dx2_) {
    validate();
  }
  Grid2D(const Axis& a1, const Axis& a2) : Grid2D(a1.n, a2.n, a1.min, a1.step, a2.min, a2.step) {}

  // n samples per axis on [-half_width, half_width); the origin is a sample
  // whenever n is even because min is formed as -(n/2)*dx.
  static Grid2D centered(std::size_t n, double half_width) {
    return centered(n, n, half_width, half_width);
  }
  static Grid2D centered(std::size_t n1, std::size_t n2, double hw1, double hw2) {
    const double d1 = 2.0 * hw1 / static_cast<double>(n1);
    const double d2 = 2.0 * hw2 / static_cast<double>(n2);
    return {n1, n2, -static_cast<double>(n1 / 2) * d1, d1, -static_cast<double>(n2 / 2) * d2, d2};
  }

  // Mirror-symmetric lattice: x_k = (k - (n-1)/2) * dx, so x -> -x maps
  // sample k to sample n-1-k.
  static Grid2D symmetric(std::size_t n, double dx) {
    const double m = -0.5 * static_cast<double>(n - 1) * dx;
    return {n, n, m, dx, m, dx};
  }

  void validate() const {
    if (n1 < 2 || n2 < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 samples per axis");
    if (!(dx1 > 0.0) || !(dx2 > 0.0) || !std::isfinite(dx1) || !std::isfinite(dx2))
      throw Error(ErrorKind::InvalidArgument, "grid spacing must be positive and finite");
    if (!std::isfinite(x1_min) || !std::isfinite(x2_min))
      throw Error(ErrorKind::InvalidArgument, "grid origin must be finite");
  }

  Axis axis1() const { return {n1, x1_min, dx1}; }
  Axis axis2() const { return {n2, x2_min, dx2}; }
  std::size_t size() const { return n1 * n2; }
  double cell_area() const { return dx1 * dx2; }
  double x1(std::size_t k) const { return x1_min + static_cast<double>(k) * dx1; }
  double x2(std::size_t k) const { return x2_min + static_cast<double>(k) * dx2; }
  std::size_t index(std::size_t k1, std::size_t k2) const { return k1 * n2 + k2; }

  bool is_symmetric(double tol = 1e-12) const {
    auto sym = [&](double mn, double d, std::size_t n) {
      return std::fabs(mn + 0.5 * static_cast<double>(n - 1) * d) <= tol * d * static_cast<double>(n);
    };
    return sym(x1_min, dx1, n1) && sym(x2_min, dx2, n2);
  }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

inline bool same_grid(const Grid2D& a, const Grid2D& b, double rel = 1e-12) {
  auto close = [rel](double x, double y, double scale) { return std::fabs(x - y) <= rel * scale; };
  const double s1 = a.dx1 * static_cast<double>(a.n1);
  const double s2 = a.dx2 * static_cast<double>(a.n2);
  return a.n1 == b.n1 && a.n2 == b.n2 && close(a.dx1, b.dx1, a.dx1) && close(a.dx2, b.dx2, a.dx2) &&
         close(a.x1_min, b.x1_min, s1) && close(a.x2_min, b.x2_min, s2);
}

inline void require_same_grid(const Grid2D& a, const Grid2D& b, const char* what) {
  if (!same_grid(a, b)) throw Error(ErrorKind::GridMismatch, what);
}

/// Boolean membership over the cells of a grid.
class IndexSet2D {
 public:
  IndexSet2D() = default;
  explicit IndexSet2D(const Grid2D& grid, bool value = false)
      : grid_(grid), member_(grid.size(), value ? 1 : 0) {}

  static IndexSet2D empty(const Grid2D& grid) { return IndexSet2D(grid, false); }
  static IndexSet2D full(const Grid2D& grid) { return IndexSet2D(grid, true); }

  // s1 x s2 block whose lower-left cell is (n1 - s1)/2, (n2 - s2)/2; for even
  // n and even s this is symmetric about the origin cell ring.
  static IndexSet2D centered_block(const Grid2D& grid, std::size_t s1, std::size_t s2) {
    if (s1 > grid.n1 || s2 > grid.n2) throw Error(ErrorKind::InvalidArgument, "block larger than grid");
    IndexSet2D set(grid);
    const std::size_t o1 = (grid.n1 - s1) / 2;
    const std::size_t o2 = (grid.n2 - s2) / 2;
    for (std::size_t a = 0; a < s1; ++a)
      for (std::size_t b = 0; b < s2; ++b) set.member_[grid.index(o1 + a, o2 + b)] = 1;
    return set;
  }

  // Exactly `count` distinct cells drawn with a seeded partial shuffle.
  static IndexSet2D random(const Grid2D& grid, std::size_t count, std::uint64_t seed) {
    if (count > grid.size()) throw Error(ErrorKind::InvalidArgument, "random set larger than grid");
    std::vector<std::size_t> order(grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, order.size() - 1);
      std::swap(order[i], order[pick(rng)]);
    }
    IndexSet2D set(grid);
    for (std::size_t i = 0; i < count; ++i) set.member_[order[i]] = 1;
    return set;
  }

  template <class Pred>
  static IndexSet2D where(const Grid2D& grid, Pred&& pred) {
    IndexSet2D set(grid);
    for (std::size_t a = 0; a < grid.n1; ++a)
      for (std::size_t b = 0; b < grid.n2; ++b)
        if (pred(grid.x1(a), grid.x2(b))) set.member_[grid.index(a, b)] = 1;
    return set;
  }

  const Grid2D& grid() const { return grid_; }
  bool contains(std::size_t idx) const { return member_.at(idx) != 0; }
  bool contains(std::size_t k1, std::size_t k2) const { return contains(grid_.index(k1, k2)); }
  void set(std::size_t idx, bool value) { member_.at(idx) = value ? 1 : 0; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto m : member_) c += m;
    return c;
  }
  double measure() const { return static_cast<double>(count()) * grid_.cell_area(); }
  const std::vector<std::uint8_t>& membership() const { return member_; }

  IndexSet2D complement() const {
    IndexSet2D out(grid_);
    for (std::size_t i = 0; i < member_.size(); ++i) out.member_[i] = member_[i] ? 0 : 1;
    return out;
  }

 private:
  Grid2D grid_;
  std::vector<std::uint8_t> member_;
};

}  // namespace qwlct
