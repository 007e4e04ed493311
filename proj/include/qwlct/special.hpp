#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "qwlct/error.hpp"

namespace qwlct {

inline void require_positive_argument(double x, const char* fn) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw Error(ErrorKind::InvalidArgument, std::string(fn) + " needs a finite x > 0");
}

inline double gamma_fn(double x) {
  require_positive_argument(x, "gamma");
  return boost::math::tgamma(x);
}

inline double digamma(double x) {
  require_positive_argument(x, "digamma");
  return boost::math::digamma(x);
}

/// psi(1/2) - ln(pi), the constant of the logarithmic uncertainty bound.
inline double log_up_delta() { return digamma(0.5) - std::log(std::numbers::pi); }

struct PittConstant {
  double literal;     // pi^alpha Gamma((2t - alpha)/4) Gamma((2t + alpha)/4)
  double calibrated;  // scaled by 4 pi^2 so that alpha = 0 reproduces the energy identity
};

inline PittConstant pitt_constant(double alpha, int t = 2) {
  if (t <= 0 || !(alpha >= 0.0) || alpha > t)
    throw Error(ErrorKind::InvalidArgument, "Pitt constant needs 0 <= alpha <= t");
  const double pi = std::numbers::pi;
  const double lit = std::pow(pi, alpha) * gamma_fn((2.0 * t - alpha) / 4.0) * gamma_fn((2.0 * t + alpha) / 4.0);
  return {lit, 4.0 * pi * pi * lit};
}

/// D_{s,s'} = (4/s)^{1/s} (4/s')^{1/s'} with 1/s + 1/s' = 1.
inline double lieb_constant(double s) {
  if (!(s > 1.0)) throw Error(ErrorKind::InvalidArgument, "Lieb constant needs s > 1");
  const double sp = s / (s - 1.0);
  return std::pow(4.0 / s, 1.0 / s) * std::pow(4.0 / sp, 1.0 / sp);
}

}  // namespace qwlct
