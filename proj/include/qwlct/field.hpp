#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qwlct/error.hpp"
#include "qwlct/grid.hpp"
#include "qwlct/lct_params.hpp"
#include "qwlct/quaternion.hpp"
#include "qwlct/signal.hpp"
#include "qwlct/summation.hpp"

namespace qwlct {

// Window shifts must be whole multiples of the sample spacing so that
// phi(x - u) is an exact index shift of the sampled window.
inline void require_shift_aligned(const Grid2D& shift, const Grid2D& spatial) {
  const bool ok = lattice_index(shift.x1_min, spatial.dx1) && lattice_index(shift.dx1, spatial.dx1) &&
                  lattice_index(shift.x2_min, spatial.dx2) && lattice_index(shift.dx2, spatial.dx2);
  if (!ok) throw Error(ErrorKind::NotLatticeAligned, "shift grid must be an integer multiple of the spatial spacing");
}

/// Shift lattice u_k = (k - n_u/2) * stride * dx covering the spatial extent.
inline Grid2D default_shift_grid(const Grid2D& spatial, std::size_t stride) {
  if (stride == 0 || spatial.n1 % stride != 0 || spatial.n2 % stride != 0)
    throw Error(ErrorKind::InvalidArgument, "shift stride must divide the grid size");
  const std::size_t m1 = spatial.n1 / stride, m2 = spatial.n2 / stride;
  const double d1 = static_cast<double>(stride) * spatial.dx1, d2 = static_cast<double>(stride) * spatial.dx2;
  return {m1, m2, -static_cast<double>(m1 / 2) * d1, d1, -static_cast<double>(m2 / 2) * d2, d2};
}

// Shift lattice symmetric about 0: u_k = (k - (m-1)/2) * du. Needs an even
// stride (or odd m) to stay on the dx lattice.
inline Grid2D symmetric_shift_grid(std::size_t m, std::size_t stride, double dx) {
  const double du = static_cast<double>(stride) * dx;
  const double mn = -0.5 * static_cast<double>(m - 1) * du;
  return {m, m, mn, du, mn, du};
}

/// Samples G(w, u) for all shifts, stored u-major: the w-plane of shift
/// (u1, u2) is contiguous, indexed w1 * n_w2 + w2.
class QWLCTField {
 public:
  QWLCTField() = default;
  QWLCTField(const Grid2D& freq, const Grid2D& shift, const Grid2D& spatial, const LCTParams& A1,
             const LCTParams& A2, std::string window_id, std::vector<Quaternion> values)
      : freq_(freq), shift_(shift), spatial_(spatial), A1_(A1), A2_(A2), window_id_(std::move(window_id)),
        values_(std::move(values)) {
    if (values_.size() != freq_.size() * shift_.size())
      throw Error(ErrorKind::InvalidArgument, "field value count does not match its grids");
    for (const auto& q : values_)
      if (!is_finite(q)) throw Error(ErrorKind::NonFinite, "field contains NaN or Inf");
  }

  const Grid2D& freq_grid() const { return freq_; }
  const Grid2D& shift_grid() const { return shift_; }
  const Grid2D& spatial_grid() const { return spatial_; }
  const LCTParams& a1() const { return A1_; }
  const LCTParams& a2() const { return A2_; }
  const std::string& window_id() const { return window_id_; }
  const std::vector<Quaternion>& values() const { return values_; }

  std::size_t slice_size() const { return freq_.size(); }
  std::size_t slice_count() const { return shift_.size(); }
  std::size_t index(std::size_t u1, std::size_t u2, std::size_t w1, std::size_t w2) const {
    return (u1 * shift_.n2 + u2) * freq_.size() + w1 * freq_.n2 + w2;
  }
  const Quaternion& at(std::size_t u1, std::size_t u2, std::size_t w1, std::size_t w2) const {
    return values_[index(u1, u2, w1, w2)];
  }

  QSignal2D slice(std::size_t u1, std::size_t u2) const {
    const std::size_t off = (u1 * shift_.n2 + u2) * freq_.size();
    return {freq_, std::vector<Quaternion>(values_.begin() + static_cast<std::ptrdiff_t>(off),
                                           values_.begin() + static_cast<std::ptrdiff_t>(off + freq_.size()))};
  }

  // dw1 dw2 du1 du2.
  double cell_measure() const { return freq_.cell_area() * shift_.cell_area(); }

 private:
  Grid2D freq_, shift_, spatial_;
  LCTParams A1_, A2_;
  std::string window_id_;
  std::vector<Quaternion> values_;
};

inline double field_energy(const QWLCTField& G) {
  const auto& v = G.values();
  return pairwise_sum(v.size(), [&](std::size_t i) { return norm_sq(v[i]); }) * G.cell_measure();
}

inline double field_max_abs(const QWLCTField& G) {
  double m = 0.0;
  for (const auto& q : G.values()) m = std::fmax(m, norm(q));
  return m;
}

}  // namespace qwlct
