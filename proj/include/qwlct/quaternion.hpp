#pragma once

#include <cmath>
#include <ostream>

namespace qwlct {

/// Real quaternion q0 + i q1 + j q2 + k q3 with the Hamilton product.
struct Quaternion {
  double q0 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;

  constexpr Quaternion() = default;
  constexpr explicit Quaternion(double s) : q0(s) {}
  constexpr Quaternion(double a, double b, double c, double d) : q0(a), q1(b), q2(c), q3(d) {}

  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    q0 += o.q0; q1 += o.q1; q2 += o.q2; q3 += o.q3;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    q0 -= o.q0; q1 -= o.q1; q2 -= o.q2; q3 -= o.q3;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    q0 *= s; q1 *= s; q2 *= s; q3 *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.q0, -a.q1, -a.q2, -a.q3}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return {a.q0 / s, a.q1 / s, a.q2 / s, a.q3 / s}; }

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.q0 * q.q0 - p.q1 * q.q1 - p.q2 * q.q2 - p.q3 * q.q3,
          p.q0 * q.q1 + p.q1 * q.q0 + p.q2 * q.q3 - p.q3 * q.q2,
          p.q0 * q.q2 - p.q1 * q.q3 + p.q2 * q.q0 + p.q3 * q.q1,
          p.q0 * q.q3 + p.q1 * q.q2 - p.q2 * q.q1 + p.q3 * q.q0};
}

constexpr Quaternion quat_mul(const Quaternion& p, const Quaternion& q) { return p * q; }

constexpr Quaternion conj(const Quaternion& q) { return {q.q0, -q.q1, -q.q2, -q.q3}; }

constexpr double norm_sq(const Quaternion& q) {
  return q.q0 * q.q0 + q.q1 * q.q1 + q.q2 * q.q2 + q.q3 * q.q3;
}

// hypot-style scaling is unnecessary at the magnitudes used here.
inline double norm(const Quaternion& q) { return std::sqrt(norm_sq(q)); }

constexpr double scalar_part(const Quaternion& q) { return q.q0; }

inline bool is_finite(const Quaternion& q) {
  return std::isfinite(q.q0) && std::isfinite(q.q1) && std::isfinite(q.q2) && std::isfinite(q.q3);
}

inline double max_abs_component(const Quaternion& q) {
  return std::fmax(std::fmax(std::fabs(q.q0), std::fabs(q.q1)),
                   std::fmax(std::fabs(q.q2), std::fabs(q.q3)));
}

enum class ImagAxis { I, J };

/// cos(theta) + mu sin(theta) with mu = i or j.
inline Quaternion exp_axis(ImagAxis axis, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return axis == ImagAxis::I ? Quaternion{c, s, 0, 0} : Quaternion{c, 0, s, 0};
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.q0 << ", " << q.q1 << ", " << q.q2 << ", " << q.q3 << ')';
}

}  // namespace qwlct
