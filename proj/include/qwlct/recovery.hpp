#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qwlct/error.hpp"
#include "qwlct/generators.hpp"
#include "qwlct/qlct.hpp"
#include "qwlct/qwlct.hpp"
#include "qwlct/report.hpp"
#include "qwlct/signal.hpp"

namespace qwlct {

/// B_Q g = L^{-1}[chi_Q L[g]] with the transform plan built once.
class BandProjector {
 public:
  BandProjector(const Grid2D& spatial, const LCTParams& A1, const LCTParams& A2, IndexSet2D band)
      : plan_((require_nondegenerate(A1, A2), QLCTPlan(spatial, A1, A2))), band_(std::move(band)) {
    require_same_grid(band_.grid(), plan_.output_grid(), "band set must live on the transform lattice");
  }

  QSignal2D operator()(const QSignal2D& g) const {
    require_same_grid(g.grid(), plan_.spatial(), "signal grid differs from the projector grid");
    auto spec = plan_.forward(g.samples());
    for (std::size_t i = 0; i < spec.size(); ++i)
      if (!band_.contains(i)) spec[i] = Quaternion{};
    return {g.grid(), plan_.inverse(spec)};
  }

  const Grid2D& spatial() const { return plan_.spatial(); }
  const Grid2D& lattice() const { return plan_.output_grid(); }
  const IndexSet2D& band() const { return band_; }

 private:
  QLCTPlan plan_;
  IndexSet2D band_;
};

inline QSignal2D bandlimit_project(const QSignal2D& g, const IndexSet2D& Q, const LCTParams& A1,
                                   const LCTParams& A2) {
  return BandProjector(g.grid(), A1, A2, Q)(g);
}

inline QSignal2D time_erase(const QSignal2D& g, const IndexSet2D& T) {
  require_same_grid(g.grid(), T.grid(), "erase set lives on a different grid");
  std::vector<Quaternion> s = g.samples();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (T.contains(i)) s[i] = Quaternion{};
  return {g.grid(), std::move(s)};
}

inline constexpr double kUpsilonCap = 1e12;

struct StabilityResult {
  bool stable = false;
  double upsilon = std::numeric_limits<double>::infinity();
  double product = 0.0;  // |Q| |T|
  double limit = 0.0;    // 2 pi / |b|
  double tau = 0.0;      // |Q| |T| |b| / 2 pi

  std::string describe() const {
    return "stability window 0 < |Q||T| < 2pi/|b| = " + format_g17(limit) + ", got |Q||T| = " + format_g17(product);
  }
};

/// Upsilon = (1 - sqrt(|b|/2pi) sqrt(|Q||T|))^{-1} with |b| = |b1 b2|.
inline StabilityResult stability_bound(double measure_q, double measure_t, double b1, double b2) {
  if (measure_q < 0.0 || measure_t < 0.0) throw Error(ErrorKind::InvalidArgument, "set measures must be >= 0");
  const double b = std::fabs(b1 * b2);
  if (!(b > 0.0)) throw Error(ErrorKind::DegenerateParams, "stability bound needs b1 b2 != 0");
  StabilityResult r;
  r.product = measure_q * measure_t;
  r.limit = 2.0 * std::numbers::pi / b;
  r.tau = r.product / r.limit;
  r.stable = r.product < r.limit;
  if (r.stable) {
    const double u = 1.0 / (1.0 - std::sqrt(r.tau));
    r.upsilon = u > kUpsilonCap ? std::numeric_limits<double>::infinity() : u;
  }
  return r;
}

struct RecoveryResult {
  QSignal2D estimate;
  std::size_t iterations = 0;
  std::vector<double> residuals;
  bool converged = false;
  bool diverged = false;
  double error = 0.0;
  double bound = 0.0;
  bool within_bound = false;
  double ratio = 0.0;  // geometric mean of consecutive residual ratios
};

/// Fixed-point iteration est_{k+1} = B_Q(r + chi_T est_k), est_0 = B_Q r.
inline RecoveryResult recover(const QSignal2D& r, const IndexSet2D& T, const BandProjector& BQ, std::size_t max_iter,
                              double tol) {
  require_same_grid(r.grid(), T.grid(), "erase set lives on a different grid");
  RecoveryResult out;
  QSignal2D est = BQ(r);
  for (std::size_t k = 0; k < max_iter; ++k) {
    std::vector<Quaternion> s = r.samples();
    for (std::size_t i = 0; i < s.size(); ++i)
      if (T.contains(i)) s[i] = est[i];
    QSignal2D next = BQ(QSignal2D(r.grid(), std::move(s)));
    const double res = lp_norm(next - est, 2);
    const double scale = lp_norm(est, 2);
    est = std::move(next);
    out.iterations = k + 1;
    out.residuals.push_back(res);
    if (res <= tol * scale || res == 0.0) {
      out.converged = true;
      break;
    }
    const std::size_t m = out.residuals.size();
    if (m >= 2 && res > out.residuals[m - 2] * (1.0 + 1e-9) && res > 1e-13 * scale) {
      out.diverged = true;
      break;
    }
  }
  if (out.residuals.size() >= 2 && out.residuals.front() > 0.0 && out.residuals.back() > 0.0)
    out.ratio = std::pow(out.residuals.back() / out.residuals.front(),
                         1.0 / static_cast<double>(out.residuals.size() - 1));
  out.estimate = std::move(est);
  return out;
}

enum class EraseShape { Random, Block };

struct RecoveryConfig {
  std::size_t n = 64;
  double half_width = 2.0;
  double beta = 1.0 / 16.0;
  LCTParams A1 = LCTParams::example();
  LCTParams A2 = LCTParams::example();
  std::size_t q_block = 14;
  EraseShape t_shape = EraseShape::Random;
  double tau = 0.25;   // target |Q||T||b| / 2pi
  double noise = 0.0;  // |n| / |f_u|
  std::size_t max_iter = 200;
  double tol = 1e-12;
  std::uint64_t seed = 42;
};

struct RecoveryProblem {
  QSignal2D truth;
  IndexSet2D band;
  IndexSet2D erase;
  QSignal2D noise;
  QSignal2D observed;
  LCTParams A1, A2;
};

struct RecoveryExperiment {
  RecoveryConfig config;
  RecoveryProblem problem;
  StabilityResult stability;
  RecoveryResult result;
};

namespace detail {

inline std::size_t erase_cells(const RecoveryConfig& c, double measure_q, const Grid2D& g) {
  const double b = std::fabs(c.A1.b() * c.A2.b());
  const double want = c.tau * 2.0 * std::numbers::pi / (b * measure_q * g.cell_area());
  // Below the window the count rounds down, at or beyond it rounds up, so
  // the requested side of the stability boundary is preserved.
  const double cells = c.tau < 1.0 ? std::floor(want) : std::ceil(want);
  return static_cast<std::size_t>(std::fmin(cells, static_cast<double>(g.size())));
}

}  // namespace detail

/// Builds the ground truth, sets and observation for a configuration.
inline RecoveryProblem make_recovery_problem(const RecoveryConfig& c) {
  if (!(c.tau >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tau must be >= 0");
  if (!(c.noise >= 0.0)) throw Error(ErrorKind::InvalidArgument, "noise level must be >= 0");
  const Grid2D g = Grid2D::centered(c.n, c.half_width);
  const GaussianPairParams p{c.beta};
  const auto fu = modified_signal(make_paper_gaussian(g, p), make_paper_window(g, p), 0.0, 0.0);
  const Grid2D lattice = qlct_output_grid(g, c.A1, c.A2);
  const auto band = IndexSet2D::centered_block(lattice, c.q_block, c.q_block);
  const BandProjector BQ(g, c.A1, c.A2, band);
  RecoveryProblem pr{BQ(fu), band, IndexSet2D(g), QSignal2D::constant(g, {}), QSignal2D::constant(g, {}), c.A1,
                     c.A2};

  std::mt19937_64 rng(c.seed);
  const std::uint64_t t_seed = rng();
  const std::size_t cells = detail::erase_cells(c, band.measure(), g);
  if (c.t_shape == EraseShape::Random) {
    pr.erase = IndexSet2D::random(g, cells, t_seed);
  } else {
    const double root = std::sqrt(static_cast<double>(cells));
    const auto side = static_cast<std::size_t>(c.tau < 1.0 ? std::floor(root) : std::ceil(root));
    pr.erase = IndexSet2D::centered_block(g, side, side);
  }

  if (c.noise > 0.0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Quaternion> s(g.size());
    for (auto& q : s) q = Quaternion(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    QSignal2D raw(g, std::move(s));
    pr.noise = (c.noise * lp_norm(pr.truth, 2) / lp_norm(raw, 2)) * raw;
  }
  pr.observed = time_erase(pr.truth + pr.noise, pr.erase);
  return pr;
}

/// Runs one experiment. Configurations outside the stability window are
/// rejected with an Unstable error naming the window.
inline RecoveryExperiment run_recovery(const RecoveryConfig& c) {
  RecoveryExperiment ex{c, make_recovery_problem(c), {}, {}};
  ex.stability = stability_bound(ex.problem.band.measure(), ex.problem.erase.measure(), c.A1.b(), c.A2.b());
  if (!ex.stability.stable || !std::isfinite(ex.stability.upsilon))
    throw Error(ErrorKind::Unstable, "recovery rejected: " + ex.stability.describe());
  const BandProjector BQ(ex.problem.observed.grid(), c.A1, c.A2, ex.problem.band);
  ex.result = recover(ex.problem.observed, ex.problem.erase, BQ, c.max_iter, c.tol);
  ex.result.error = lp_norm(ex.problem.truth - ex.result.estimate, 2);
  const double noise_norm = lp_norm(ex.problem.noise, 2);
  ex.result.bound = ex.stability.upsilon * noise_norm;
  // The floor absorbs the iteration's stopping error in noiseless runs.
  ex.result.within_bound = ex.result.error <= ex.result.bound + 1e-6 * lp_norm(ex.problem.truth, 2);
  return ex;
}

inline json recovery_json(const RecoveryExperiment& ex) {
  const auto& c = ex.config;
  const auto& r = ex.result;
  json residuals = json::array();
  for (double v : r.residuals) residuals.push_back(json_number(v));
  return json{{"upsilon", json_number(ex.stability.upsilon)},
              {"tau", ex.stability.tau},
              {"measure_Q", ex.problem.band.measure()},
              {"measure_T", ex.problem.erase.measure()},
              {"cells_T", ex.problem.erase.count()},
              {"stability_limit", ex.stability.limit},
              {"error", r.error},
              {"relative_error", r.error / lp_norm(ex.problem.truth, 2)},
              {"noise_norm", lp_norm(ex.problem.noise, 2)},
              {"bound", json_number(r.bound)},
              {"within_bound", r.within_bound},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"diverged", r.diverged},
              {"ratio", r.ratio},
              {"residual_history", residuals},
              {"seed", c.seed},
              {"config",
               {{"n", c.n},
                {"half_width", c.half_width},
                {"beta", c.beta},
                {"A1", matrix_json(c.A1)},
                {"A2", matrix_json(c.A2)},
                {"q_block", c.q_block},
                {"t_shape", c.t_shape == EraseShape::Random ? "random" : "block"},
                {"tau_target", c.tau},
                {"noise", c.noise},
                {"max_iter", c.max_iter},
                {"tol", c.tol}}}};
}

}  // namespace qwlct
