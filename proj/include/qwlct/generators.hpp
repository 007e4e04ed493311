#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "qwlct/error.hpp"
#include "qwlct/grid.hpp"
#include "qwlct/signal.hpp"

namespace qwlct {

// Which imaginary unit carries the x2 modulation factor of the example pair.
enum class SecondUnit { I, J };

struct GaussianPairParams {
  double beta = 1.0 / 16.0;
  double u0 = 0.0;
  double v0 = 0.0;
  SecondUnit second_unit = SecondUnit::I;
};

namespace detail {

inline QSignal2D modulated_gaussian(const Grid2D& grid, const GaussianPairParams& p, double amplitude) {
  if (!(p.beta > 0.0)) throw Error(ErrorKind::InvalidArgument, "beta must be positive");
  return QSignal2D::sample(grid, [&](double x1, double x2) {
    const double g = amplitude * std::exp(-(x1 * x1 + x2 * x2) / (2.0 * p.beta));
    const Quaternion left = exp_axis(ImagAxis::I, x1 * p.u0);
    const Quaternion right = exp_axis(p.second_unit == SecondUnit::I ? ImagAxis::I : ImagAxis::J, x2 * p.v0);
    return left * Quaternion(g) * right;
  });
}

}  // namespace detail

/// (pi beta)^(-1/2) e^{i x1 u0} e^{-|x|^2/(2 beta)} e^{mu x2 v0}; unit 2-norm.
inline QSignal2D make_paper_gaussian(const Grid2D& grid, const GaussianPairParams& p = {}) {
  return detail::modulated_gaussian(grid, p, 1.0 / std::sqrt(std::numbers::pi * p.beta));
}

/// Same shape with amplitude 2 sqrt(pi/beta); squared norm 4 pi^2.
inline QSignal2D make_paper_window(const Grid2D& grid, const GaussianPairParams& p = {}) {
  return detail::modulated_gaussian(grid, p, 2.0 * std::sqrt(std::numbers::pi / p.beta));
}

inline QSignal2D gaussian_window(const Grid2D& grid, double sigma, const Quaternion& unit = Quaternion::one()) {
  if (!(sigma > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma must be positive");
  return QSignal2D::sample(grid, [&](double x1, double x2) {
    return std::exp(-(x1 * x1 + x2 * x2) / (2.0 * sigma * sigma)) * unit;
  });
}

inline QSignal2D box_window(const Grid2D& grid, double half_width) {
  return QSignal2D::sample(grid, [&](double x1, double x2) {
    return Quaternion(std::fabs(x1) <= half_width && std::fabs(x2) <= half_width ? 1.0 : 0.0);
  });
}

// Separable Hann bump of the given radius per axis.
inline QSignal2D raised_cosine_window(const Grid2D& grid, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  auto bump = [radius](double x) {
    return std::fabs(x) < radius ? 0.5 * (1.0 + std::cos(std::numbers::pi * x / radius)) : 0.0;
  };
  return QSignal2D::sample(grid, [&](double x1, double x2) { return Quaternion(bump(x1) * bump(x2)); });
}

// One sample of value q/cell_area at lattice index (k1, k2): unit mass.
inline QSignal2D impulse(const Grid2D& grid, std::size_t k1, std::size_t k2, const Quaternion& q = Quaternion::one()) {
  std::vector<Quaternion> s(grid.size());
  s.at(grid.index(k1, k2)) = q / grid.cell_area();
  return {grid, std::move(s)};
}

inline QSignal2D impulse_at_origin(const Grid2D& grid, const Quaternion& q = Quaternion::one()) {
  const auto k1 = lattice_index(-grid.x1_min, grid.dx1);
  const auto k2 = lattice_index(-grid.x2_min, grid.dx2);
  if (!k1 || !k2 || *k1 < 0 || *k2 < 0 || *k1 >= static_cast<long long>(grid.n1) ||
      *k2 >= static_cast<long long>(grid.n2))
    throw Error(ErrorKind::NotLatticeAligned, "origin is not a lattice point");
  return impulse(grid, static_cast<std::size_t>(*k1), static_cast<std::size_t>(*k2), q);
}

inline Quaternion random_quaternion(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
  return {a, b, c, d};
}

inline Quaternion random_unit_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Quaternion q;
  do {
    const double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
    q = {a, b, c, d};
  } while (norm(q) < 1e-3);
  return q / norm(q);
}

// Independent uniform components in [-1, 1]; not band limited.
inline QSignal2D random_signal(const Grid2D& grid, std::mt19937_64& rng) {
  std::vector<Quaternion> s(grid.size());
  for (auto& q : s) q = random_quaternion(rng);
  return {grid, std::move(s)};
}

struct BandConcentratedParams {
  int bumps = 3;
  double center_range = 0.35;  // as a fraction of the grid half extent
  double sigma_min = 0.10;     // fractions of the grid half extent
  double sigma_max = 0.20;
  double max_frequency = 0.25;  // as a fraction of the Nyquist frequency
};

// Sum of a few quaternion-weighted, modulated Gaussian bumps placed well
// inside the grid so both the signal and its spectrum decay before the edges.
inline QSignal2D random_band_concentrated(const Grid2D& grid, std::mt19937_64& rng,
                                          const BandConcentratedParams& p = {}) {
  const double c1 = grid.x1_min + 0.5 * grid.dx1 * static_cast<double>(grid.n1);
  const double c2 = grid.x2_min + 0.5 * grid.dx2 * static_cast<double>(grid.n2);
  const double h1 = 0.5 * grid.dx1 * static_cast<double>(grid.n1);
  const double h2 = 0.5 * grid.dx2 * static_cast<double>(grid.n2);
  const double h = std::fmin(h1, h2);
  const double nyq = std::numbers::pi / std::fmax(grid.dx1, grid.dx2);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> width(p.sigma_min * h, p.sigma_max * h);
  struct Bump {
    double m1, m2, sigma, k1, k2;
    Quaternion weight;
  };
  std::vector<Bump> bumps;
  for (int b = 0; b < p.bumps; ++b) {
    Bump bump{};
    bump.m1 = c1 + p.center_range * h * unit(rng);
    bump.m2 = c2 + p.center_range * h * unit(rng);
    bump.sigma = width(rng);
    bump.k1 = p.max_frequency * nyq * unit(rng);
    bump.k2 = p.max_frequency * nyq * unit(rng);
    bump.weight = random_quaternion(rng);
    bumps.push_back(bump);
  }
  return QSignal2D::sample(grid, [&](double x1, double x2) {
    Quaternion acc;
    for (const auto& b : bumps) {
      const double r2 = (x1 - b.m1) * (x1 - b.m1) + (x2 - b.m2) * (x2 - b.m2);
      const double g = std::exp(-r2 / (2.0 * b.sigma * b.sigma));
      acc += exp_axis(ImagAxis::I, b.k1 * x1) * (g * b.weight) * exp_axis(ImagAxis::J, b.k2 * x2);
    }
    return acc;
  });
}

}  // namespace qwlct
