#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "qwlct/error.hpp"
#include "qwlct/grid.hpp"

namespace qwlct {

/// Iterative radix-2 FFT. forward: X[m] = sum_k x[k] e^{-2 pi i k m / n};
/// inverse uses the opposite sign and no 1/n factor.
class Radix2Fft {
 public:
  explicit Radix2Fft(std::size_t n) : n_(n), twiddle_(n / 2), bitrev_(n) {
    if (!is_power_of_two(n)) throw Error(ErrorKind::InvalidArgument, "FFT length must be a power of two");
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double t = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      twiddle_[k] = {std::cos(t), std::sin(t)};
    }
    std::size_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t r = 0;
      for (std::size_t b = 0; b < bits; ++b)
        if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
      bitrev_[i] = r;
    }
  }

  std::size_t size() const { return n_; }

  void forward(std::span<std::complex<double>> x) const { run(x, false); }
  void inverse(std::span<std::complex<double>> x) const { run(x, true); }

 private:
  void run(std::span<std::complex<double>> x, bool inv) const {
    if (x.size() != n_) throw Error(ErrorKind::InvalidArgument, "FFT buffer has the wrong length");
    for (std::size_t i = 0; i < n_; ++i)
      if (i < bitrev_[i]) std::swap(x[i], x[bitrev_[i]]);
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          std::complex<double> w = twiddle_[k * stride];
          if (inv) w = std::conj(w);
          const std::complex<double> t = w * x[start + k + half];
          x[start + k + half] = x[start + k] - t;
          x[start + k] += t;
        }
      }
    }
  }

  std::size_t n_;
  std::vector<std::complex<double>> twiddle_;
  std::vector<std::size_t> bitrev_;
};

}  // namespace qwlct
