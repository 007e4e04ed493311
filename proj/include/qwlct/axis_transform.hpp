#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

#include "qwlct/error.hpp"
#include "qwlct/fft.hpp"
#include "qwlct/grid.hpp"
#include "qwlct/quaternion.hpp"

namespace qwlct {

using cplx = std::complex<double>;

inline cplx unit_phase(double theta) { return {std::cos(theta), std::sin(theta)}; }

// Parameters of a 1D chirp-Fourier-chirp operator
//   G(w) = gain * e^{mu(post w^2 + phase)} sum_x e^{mu pre x^2} e^{-mu x w / b} g(x) dx
// where mu is the imaginary unit of the axis. The QFT is pre = post = phase = 0,
// b = gain = 1; the LCT uses pre = a/2b, post = d/2b, phase = -pi/4 and
// gain = 1/sqrt(2 pi |b|).
struct ChirpSpec {
  double pre = 0.0;
  double b = 1.0;
  double post = 0.0;
  double phase = 0.0;
  double gain = 1.0;
};

// Output lattice w_p = (p - n/2) |b| 2 pi / (n dx), ascending for either sign of b.
inline Axis chirp_output_axis(const Axis& x, double b) {
  const double step = std::fabs(b) * 2.0 * std::numbers::pi / (static_cast<double>(x.n) * x.step);
  return {x.n, -static_cast<double>(x.n / 2) * step, step};
}

/// FFT evaluation of the Riemann sum above on the output lattice, exactly
/// invertible on that lattice.
class ChirpFourierAxis {
 public:
  ChirpFourierAxis(const Axis& x, const ChirpSpec& spec)
      : x_(x), spec_(spec), out_(chirp_output_axis(x, spec.b)), fft_(x.n) {
    if (!(std::fabs(spec.b) > 0.0)) throw Error(ErrorKind::DegenerateParams, "chirp axis needs b != 0");
    const std::size_t n = x.n;
    const double nd = static_cast<double>(n);
    const double dxi = 2.0 * std::numbers::pi / (nd * x.step);
    const double inv_gain = 1.0 / (2.0 * std::numbers::pi * std::fabs(spec.b) * spec.gain);
    const std::size_t half = n / 2;
    reversed_ = spec.b < 0.0;
    pre_.resize(n);
    inv_pre_.resize(n);
    post_.resize(n);
    inv_post_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double xk = x.coord(k);
      pre_[k] = unit_phase(spec.pre * xk * xk);
      inv_pre_[k] = inv_gain * out_.step * unit_phase(-spec.pre * xk * xk);
    }
    for (std::size_t p = 0; p < n; ++p) {
      const double w = out_.coord(p);
      const long long m = reversed_ ? static_cast<long long>(half) - static_cast<long long>(p)
                                    : static_cast<long long>(p) - static_cast<long long>(half);
      const double xi = static_cast<double>(m) * dxi;
      const double outer = spec.post * w * w + spec.phase;
      post_[p] = spec.gain * x.step * unit_phase(outer - x.min * xi);
      inv_post_[p] = unit_phase(-outer + x.min * xi);
    }
  }

  const Axis& input_axis() const { return x_; }
  const Axis& output_axis() const { return out_; }
  const ChirpSpec& spec() const { return spec_; }

  // In-place: samples g_k on the input lattice -> G_p on the output lattice.
  void forward(std::span<cplx> line) const {
    for (std::size_t k = 0; k < line.size(); ++k) line[k] *= pre_[k];
    fft_.forward(line);
    to_output_order(line);
    for (std::size_t p = 0; p < line.size(); ++p) line[p] *= post_[p];
  }

  void inverse(std::span<cplx> line) const {
    for (std::size_t p = 0; p < line.size(); ++p) line[p] *= inv_post_[p];
    to_fft_order(line);
    fft_.inverse(line);
    for (std::size_t k = 0; k < line.size(); ++k) line[k] *= inv_pre_[k];
  }

  // Pointwise kernel of the forward sum (without dx), for direct summation.
  cplx kernel(double x, double w) const {
    return spec_.gain * unit_phase(spec_.pre * x * x - x * w / spec_.b + spec_.post * w * w + spec_.phase);
  }

 private:
  // FFT bin for output p is (p - n/2) mod n, or (n/2 - p) mod n when b < 0.
  void to_output_order(std::span<cplx> v) const {
    const std::size_t n = v.size();
    const std::size_t half = n / 2;
    for (std::size_t p = 0; p < half; ++p) std::swap(v[p], v[p + half]);
    if (reversed_) reverse_tail(v);
  }
  void to_fft_order(std::span<cplx> v) const {
    const std::size_t n = v.size();
    const std::size_t half = n / 2;
    if (reversed_) reverse_tail(v);
    for (std::size_t p = 0; p < half; ++p) std::swap(v[p], v[p + half]);
  }
  static void reverse_tail(std::span<cplx> v) {
    for (std::size_t a = 1, b = v.size() - 1; a < b; ++a, --b) std::swap(v[a], v[b]);
  }

  Axis x_;
  ChirpSpec spec_;
  Axis out_;
  Radix2Fft fft_;
  bool reversed_ = false;
  std::vector<cplx> pre_, inv_pre_, post_, inv_post_;
};

// b = 0 branch of the LCT: G(w) = sqrt|d| e^{mu c d w^2 / 2} g(d w), sampled on
// the input lattice; g is read at the nearest lattice point.
class ScalingAxis {
 public:
  ScalingAxis(const Axis& x, double c, double d, bool strict) : x_(x), c_(c), d_(d), strict_(strict) {
    if (d == 0.0) throw Error(ErrorKind::DegenerateParams, "degenerate axis needs d != 0");
  }

  const Axis& input_axis() const { return x_; }
  const Axis& output_axis() const { return x_; }

  void forward(std::span<cplx> line, std::span<cplx> scratch) const {
    std::copy(line.begin(), line.end(), scratch.begin());
    const double amp = std::sqrt(std::fabs(d_));
    for (std::size_t p = 0; p < x_.n; ++p) {
      const double w = x_.coord(p);
      const long long k = nearest(d_ * w);
      line[p] = k < 0 ? cplx{} : amp * unit_phase(0.5 * c_ * d_ * w * w) * scratch[static_cast<std::size_t>(k)];
    }
  }

  void inverse(std::span<cplx> line, std::span<cplx> scratch) const {
    std::copy(line.begin(), line.end(), scratch.begin());
    const double amp = 1.0 / std::sqrt(std::fabs(d_));
    for (std::size_t k = 0; k < x_.n; ++k) {
      const double x = x_.coord(k);
      const long long p = nearest(x / d_);
      line[k] = p < 0 ? cplx{} : amp * unit_phase(-0.5 * c_ * x * x / d_) * scratch[static_cast<std::size_t>(p)];
    }
  }

 private:
  // Index of the lattice point nearest to x, or -1 outside the lattice.
  long long nearest(double x) const {
    const double r = (x - x_.min) / x_.step;
    const double k = std::nearbyint(r);
    if (strict_ && std::fabs(r - k) > 1e-9)
      throw Error(ErrorKind::NotLatticeAligned, "degenerate transform requested an off-lattice sample");
    if (k < 0.0 || k >= static_cast<double>(x_.n)) return -1;
    return static_cast<long long>(k);
  }

  Axis x_;
  double c_;
  double d_;
  bool strict_;
};

/// Either kind of 1D operator behind one interface.
class AxisPlan {
 public:
  explicit AxisPlan(ChirpFourierAxis chirp) : chirp_(std::make_shared<const ChirpFourierAxis>(std::move(chirp))) {}
  explicit AxisPlan(ScalingAxis scaling) : scaling_(std::make_shared<const ScalingAxis>(std::move(scaling))) {}

  const Axis& input_axis() const { return chirp_ ? chirp_->input_axis() : scaling_->input_axis(); }
  const Axis& output_axis() const { return chirp_ ? chirp_->output_axis() : scaling_->output_axis(); }

  void forward(std::span<cplx> line, std::span<cplx> scratch) const {
    if (chirp_) chirp_->forward(line);
    else scaling_->forward(line, scratch);
  }
  void inverse(std::span<cplx> line, std::span<cplx> scratch) const {
    if (chirp_) chirp_->inverse(line);
    else scaling_->inverse(line, scratch);
  }

 private:
  std::shared_ptr<const ChirpFourierAxis> chirp_;
  std::shared_ptr<const ScalingAxis> scaling_;
};

enum class Direction { Forward, Inverse };

// Applies `left` along axis 1 on the left (unit i) and `right` along axis 2 on
// the right (unit j). Each quaternion row is split as (q0 + q2 j) + i (q1 + q3 j)
// so the right operator acts on two C_j lines; the result is then split as
// (r0 + r1 i) + (r2 + r3 i) j so the left operator acts on two C_i columns.
inline std::vector<Quaternion> apply_two_sided(const std::vector<Quaternion>& in, std::size_t n1, std::size_t n2,
                                               const AxisPlan& left, const AxisPlan& right, Direction dir) {
  std::vector<cplx> a(n1 * n2), b(n1 * n2);
  for (std::size_t t = 0; t < n1 * n2; ++t) {
    a[t] = {in[t].q0, in[t].q2};
    b[t] = {in[t].q1, in[t].q3};
  }
  std::vector<cplx> scratch(std::max(n1, n2));
  for (std::size_t r = 0; r < n1; ++r) {
    std::span<cplx> la(a.data() + r * n2, n2), lb(b.data() + r * n2, n2);
    if (dir == Direction::Forward) {
      right.forward(la, scratch);
      right.forward(lb, scratch);
    } else {
      right.inverse(la, scratch);
      right.inverse(lb, scratch);
    }
  }
  std::vector<cplx> z1(n1), z2(n1);
  std::vector<Quaternion> out(n1 * n2);
  for (std::size_t c = 0; c < n2; ++c) {
    for (std::size_t r = 0; r < n1; ++r) {
      const cplx u = a[r * n2 + c];
      const cplx v = b[r * n2 + c];
      z1[r] = {u.real(), v.real()};
      z2[r] = {u.imag(), v.imag()};
    }
    if (dir == Direction::Forward) {
      left.forward(z1, scratch);
      left.forward(z2, scratch);
    } else {
      left.inverse(z1, scratch);
      left.inverse(z2, scratch);
    }
    for (std::size_t r = 0; r < n1; ++r) out[r * n2 + c] = {z1[r].real(), z1[r].imag(), z2[r].real(), z2[r].imag()};
  }
  return out;
}

}  // namespace qwlct
