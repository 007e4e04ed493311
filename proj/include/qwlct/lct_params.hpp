#pragma once

#include <cmath>
#include <string>

#include "qwlct/error.hpp"

namespace qwlct {

/// Unimodular 2x2 matrix [[a, b], [c, d]] parameterizing one LCT axis.
class LCTParams {
 public:
  static constexpr double kDetTolerance = 1e-12;

  LCTParams() : LCTParams(0.0, 1.0, -1.0, 0.0) {}

  LCTParams(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
      throw Error(ErrorKind::InvalidArgument, "LCT matrix entries must be finite");
    const double det = a * d - b * c;
    if (std::fabs(det - 1.0) > kDetTolerance)
      throw Error(ErrorKind::InvalidArgument, "LCT matrix must have determinant 1 (got " + std::to_string(det) + ")");
  }

  // The matrix that turns the LCT kernel into the Fourier kernel up to constants.
  static LCTParams fourier() { return {0.0, 1.0, -1.0, 0.0}; }
  static LCTParams identity() { return {1.0, 0.0, 0.0, 1.0}; }
  // [[0, 1/4], [-4, 1]]: the worked-example entries a = 0, b = 1/4, d = 1 with
  // c chosen so the determinant is 1.
  static LCTParams example() { return {0.0, 0.25, -4.0, 1.0}; }
  static LCTParams shear() { return {1.0, 1.0, 0.0, 1.0}; }

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

  // |b| below 1e-300 counts as zero; there is no blending between branches.
  bool is_degenerate() const { return std::fabs(b_) < 1e-300; }

  friend bool operator==(const LCTParams&, const LCTParams&) = default;

 private:
  double a_, b_, c_, d_;
};

struct LCTPair {
  LCTParams a1;
  LCTParams a2;

  double b_product() const { return std::fabs(a1.b() * a2.b()); }
  double b_euclid() const { return std::hypot(a1.b(), a2.b()); }
  bool any_degenerate() const { return a1.is_degenerate() || a2.is_degenerate(); }
  bool any_negative_b() const { return a1.b() < 0.0 || a2.b() < 0.0; }
};

}  // namespace qwlct
