#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qwlct/error.hpp"
#include "qwlct/field.hpp"
#include "qwlct/qwlct.hpp"
#include "qwlct/report.hpp"
#include "qwlct/signal.hpp"
#include "qwlct/special.hpp"
#include "qwlct/summation.hpp"

namespace qwlct {

// ---------------------------------------------------------------- moments

enum class WeightKind { Power, Log };

struct Weight {
  WeightKind kind = WeightKind::Power;
  double alpha = 0.0;

  static Weight power(double a) { return {WeightKind::Power, a}; }
  static Weight log() { return {WeightKind::Log, 0.0}; }

  // ln|.| and negative powers blow up at the origin.
  bool singular() const { return kind == WeightKind::Log || alpha < 0.0; }
  double operator()(double r) const { return kind == WeightKind::Log ? std::log(r) : std::pow(r, alpha); }
};

struct MomentResult {
  double value = 0.0;
  std::size_t excluded_cells = 0;
};

namespace detail {

// Weight per lattice cell; cells at the exact origin get 0 and are counted.
inline std::vector<double> cell_weights(const Grid2D& g, Weight w, std::size_t& excluded) {
  std::vector<double> out(g.size());
  excluded = 0;
  for (std::size_t a = 0; a < g.n1; ++a)
    for (std::size_t b = 0; b < g.n2; ++b) {
      const double r = std::hypot(g.x1(a), g.x2(b));
      if (r == 0.0 && w.singular()) {
        out[g.index(a, b)] = 0.0;
        ++excluded;
      } else {
        out[g.index(a, b)] = w(r);
      }
    }
  return out;
}

}  // namespace detail

/// sum weight(|x|) |f(x)|^2 dx.
inline MomentResult signal_moment(const QSignal2D& f, Weight w) {
  MomentResult m;
  const auto wt = detail::cell_weights(f.grid(), w, m.excluded_cells);
  m.value = pairwise_sum(f.size(), [&](std::size_t i) { return wt[i] * norm_sq(f[i]); }) * f.grid().cell_area();
  return m;
}

/// sum weight(|w|) |G(w, u)|^2 dw du; the shift coordinates carry no weight.
inline MomentResult field_moment(const QWLCTField& G, Weight w) {
  MomentResult m;
  const auto wt = detail::cell_weights(G.freq_grid(), w, m.excluded_cells);
  m.excluded_cells *= G.slice_count();
  const std::size_t ns = G.slice_size();
  const auto& v = G.values();
  m.value = pairwise_sum(v.size(), [&](std::size_t i) { return wt[i % ns] * norm_sq(v[i]); }) * G.cell_measure();
  return m;
}

// ---------------------------------------------------------------- entropy

inline constexpr double kEntropyFloor = 1e-300;

/// -sum p ln p * cell, with 0 ln 0 = 0.
inline double entropy(std::span<const double> p, double cell) {
  for (double v : p)
    if (v < 0.0 || !std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "density must be finite and >= 0");
  return -pairwise_sum(p.size(), [&](std::size_t i) { return p[i] < kEntropyFloor ? 0.0 : p[i] * std::log(p[i]); }) *
         cell;
}

inline std::vector<double> cell_energies(const QSignal2D& f) {
  std::vector<double> e(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) e[i] = norm_sq(f[i]);
  return e;
}

inline std::vector<double> cell_energies(const QWLCTField& G) {
  std::vector<double> e(G.values().size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = norm_sq(G.values()[i]);
  return e;
}

inline double field_entropy(const QWLCTField& G) { return entropy(cell_energies(G), G.cell_measure()); }

// ---------------------------------------------------------- concentration

struct ConcentrationResult {
  double epsilon = 0.0;
  double measure = 0.0;
  std::size_t count = 0;
  std::vector<std::uint8_t> membership;
};

/// Smallest epsilon with |chi_{complement} target| <= epsilon |target|.
inline ConcentrationResult concentration_eps(std::span<const double> energies, std::vector<std::uint8_t> membership,
                                             double cell) {
  if (membership.size() != energies.size()) throw Error(ErrorKind::GridMismatch, "set and target sizes differ");
  const double total = pairwise_sum(energies.size(), [&](std::size_t i) { return energies[i]; });
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidArgument, "concentration of a zero target is undefined");
  const double outside =
      pairwise_sum(energies.size(), [&](std::size_t i) { return membership[i] ? 0.0 : energies[i]; });
  ConcentrationResult r;
  r.epsilon = std::sqrt(outside / total);
  r.count = static_cast<std::size_t>(std::count_if(membership.begin(), membership.end(), [](auto m) { return m != 0; }));
  r.measure = static_cast<double>(r.count) * cell;
  r.membership = std::move(membership);
  return r;
}

inline ConcentrationResult concentration_eps(const QSignal2D& f, const IndexSet2D& set) {
  require_same_grid(f.grid(), set.grid(), "set lives on a different grid");
  return concentration_eps(cell_energies(f), set.membership(), f.grid().cell_area());
}

inline ConcentrationResult concentration_eps(const QWLCTField& G, const std::vector<std::uint8_t>& set) {
  return concentration_eps(cell_energies(G), set, G.cell_measure());
}

inline constexpr double kNegligibleCellEnergy = 1e-28;

/// Greedy essential support: cells in decreasing energy (ties by index)
/// until the discarded energy is at most eps^2 of the total. The total is
/// accumulated from the smallest cell up, so eps = 0 selects the cells that
/// carry energy above rounding level.
inline ConcentrationResult essential_support(std::span<const double> energies, double cell, double eps) {
  if (!(eps >= 0.0) || eps >= 1.0) throw Error(ErrorKind::InvalidArgument, "essential support needs 0 <= eps < 1");
  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return energies[a] != energies[b] ? energies[a] > energies[b] : a < b;
  });
  // tail[k] = energy left outside the k largest cells, summed smallest first
  std::vector<double> tail(order.size() + 1, 0.0);
  for (std::size_t k = order.size(); k-- > 0;) tail[k] = tail[k + 1] + energies[order[k]];
  const double total = tail[0];
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidArgument, "essential support of a zero target is undefined");
  const double allowed = eps * eps * total;
  ConcentrationResult r;
  r.membership.assign(energies.size(), 0);
  std::size_t k = 0;
  // Cells at rounding-noise level relative to the peak count as zero, otherwise the
  // eps = 0 support would depend on which cancellations happen to land on exact 0.0.
  const double negligible = kNegligibleCellEnergy * energies[order[0]];
  while (k < order.size() && tail[k] > allowed && energies[order[k]] > negligible) {
    r.membership[order[k]] = 1;
    ++k;
  }
  r.count = k;
  r.measure = static_cast<double>(k) * cell;
  r.epsilon = std::sqrt(tail[k] / total);
  return r;
}

inline ConcentrationResult essential_support(const QSignal2D& f, double eps) {
  return essential_support(cell_energies(f), f.grid().cell_area(), eps);
}

inline ConcentrationResult essential_support(const QWLCTField& G, double eps) {
  return essential_support(cell_energies(G), G.cell_measure(), eps);
}

inline IndexSet2D to_index_set(const Grid2D& grid, const ConcentrationResult& c) {
  if (c.membership.size() != grid.size()) throw Error(ErrorKind::GridMismatch, "membership does not fit the grid");
  IndexSet2D s(grid);
  for (std::size_t i = 0; i < c.membership.size(); ++i) s.set(i, c.membership[i] != 0);
  return s;
}

// ----------------------------------------------------------------- checks

/// A signal, its window and their field, shared by every check on one case.
struct CheckInputs {
  QSignal2D f;
  QSignal2D phi;
  QWLCTField G;
  double f_energy = 0.0;
  double phi_energy = 0.0;
  std::string case_id;
  std::uint64_t seed = 0;
};

inline CheckInputs make_check_inputs(const QSignal2D& f, const QSignal2D& phi, const LCTParams& A1,
                                     const LCTParams& A2, const Grid2D& shift, std::string case_id = {},
                                     std::uint64_t seed = 0, unsigned threads = 1) {
  CheckInputs in{f, phi, qwlct_forward(f, phi, A1, A2, shift, {threads, "phi"}), energy(f), energy(phi),
                 std::move(case_id), seed};
  return in;
}

inline double b_product(const QWLCTField& G) { return std::fabs(G.a1().b() * G.a2().b()); }
inline double b_euclid(const QWLCTField& G) { return std::hypot(G.a1().b(), G.a2().b()); }

namespace detail {

inline InequalityReport stamp(InequalityReport r, const CheckInputs& in) {
  r.case_id = in.case_id;
  r.seed = in.seed;
  json p = field_params(in.G);
  for (auto it = r.params.begin(); it != r.params.end(); ++it) p[it.key()] = it.value();
  p["seed"] = in.seed;
  r.params = std::move(p);
  return r;
}

inline std::string excluded_note(std::size_t n) {
  return "origin cells excluded from singular weights: " + std::to_string(n);
}

}  // namespace detail

/// Pitt: int |w|^{-alpha} |G|^2 <= M_alpha |phi|^2 int |x|^alpha |f|^2 / (4 pi^2 |b|^alpha).
/// Two diagnostic reports: the literal constant and the 4 pi^2 calibrated one.
inline std::vector<InequalityReport> check_pitt(const CheckInputs& in, double alpha) {
  if (!(alpha >= 0.0) || alpha > 2.0) throw Error(ErrorKind::InvalidArgument, "Pitt check needs 0 <= alpha <= 2");
  const auto lhs = field_moment(in.G, Weight::power(-alpha));
  const auto xm = signal_moment(in.f, Weight::power(alpha));
  const auto M = pitt_constant(alpha, 2);
  const double b = b_product(in.G);
  const double common = in.phi_energy * xm.value / (4.0 * std::numbers::pi * std::numbers::pi * std::pow(b, alpha));
  std::vector<InequalityReport> out;
  for (const auto& [name, m] : {std::pair{"pitt_literal", M.literal}, std::pair{"pitt_calibrated", M.calibrated}}) {
    auto r = make_report(name, lhs.value, m * common, Orientation::LhsAtMostRhs);
    r.status = CheckStatus::Diagnostic;
    r.params = json{{"alpha", alpha}, {"t", 2}, {"M_alpha", m}, {"x_moment", xm.value}};
    r.conventions = {"|b| = |b1 b2|", detail::excluded_note(lhs.excluded_cells)};
    if (std::string(name) == "pitt_calibrated") r.conventions.push_back("constant scaled by 4 pi^2 (alpha = 0 anchor)");
    out.push_back(detail::stamp(std::move(r), in));
  }
  return out;
}

/// Lieb: |G|_{L^s} <= |b|^{1/s - 1/2} D_{s,s'} |f| |phi| / (2 pi). At s = 2
/// this is the energy identity and is checked as an equality.
inline InequalityReport check_lieb_inequality(const CheckInputs& in, double s, double parseval_tol = 1e-2) {
  if (!(s >= 2.0)) throw Error(ErrorKind::InvalidArgument, "Lieb inequality needs s >= 2");
  const auto& v = in.G.values();
  const double ffphi = std::sqrt(in.f_energy * in.phi_energy);
  InequalityReport r;
  if (s == 2.0) {
    r = make_report("lieb_inequality", std::sqrt(field_energy(in.G)), ffphi, Orientation::Equal, parseval_tol);
    r.conventions = {"s = 2 evaluated as the energy identity"};
  } else {
    const double sum = pairwise_sum(v.size(), [&](std::size_t i) { return std::pow(norm(v[i]), s); });
    const double lhs = std::pow(sum * in.G.cell_measure(), 1.0 / s);
    const double b = b_product(in.G);
    const double rhs = std::pow(b, 1.0 / s - 0.5) * lieb_constant(s) * ffphi / (2.0 * std::numbers::pi);
    r = make_report("lieb_inequality", lhs, rhs, Orientation::LhsAtMostRhs);
    r.conventions = {"|b| = |b1 b2|"};
  }
  r.params = json{{"s", s}, {"D", lieb_constant(s)}};
  return detail::stamp(std::move(r), in);
}

/// Logarithmic: (|phi|^2/4pi^2) int ln|x| |f|^2 + int ln|w| |G|^2 >= (Delta + ln|b|) |f|^2 |phi|^2 / 4pi^2.
/// The |b1 b2| reading is asserted; the Euclidean reading is diagnostic.
inline std::vector<InequalityReport> check_log_up(const CheckInputs& in) {
  if (!(in.f_energy > 0.0) || !(in.phi_energy > 0.0))
    throw Error(ErrorKind::InvalidArgument, "logarithmic check needs nonzero f and window");
  const auto xm = signal_moment(in.f, Weight::log());
  const auto wm = field_moment(in.G, Weight::log());
  const double lhs = in.phi_energy / (4.0 * std::numbers::pi * std::numbers::pi) * xm.value + wm.value;
  const double delta = log_up_delta();
  const double scale = in.f_energy * in.phi_energy / (4.0 * std::numbers::pi * std::numbers::pi);
  std::vector<InequalityReport> out;
  const std::pair<const char*, double> variants[] = {{"log_up", b_product(in.G)}, {"log_up_euclid", b_euclid(in.G)}};
  for (const auto& [name, b] : variants) {
    auto r = make_report(name, lhs, (delta + std::log(b)) * scale, Orientation::LhsAtLeastRhs);
    r.params = json{{"Delta", delta}, {"b", b}, {"x_log_moment", xm.value}, {"w_log_moment", wm.value}};
    r.conventions = {std::string(name) == "log_up" ? "|b| = |b1 b2|" : "|b| = sqrt(b1^2 + b2^2)",
                     detail::excluded_note(xm.excluded_cells + wm.excluded_cells)};
    if (std::string(name) != "log_up") r.status = CheckStatus::Diagnostic;
    out.push_back(detail::stamp(std::move(r), in));
  }
  return out;
}

inline constexpr double kEntropicThreshold = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

/// Entropic: E(|G|^2) >= (ln 2 - ln 2pi - ln|b1 b2|) N / (2 pi^2) - N ln N, N = |f|^2 |phi|^2.
inline InequalityReport check_entropic(const CheckInputs& in) {
  const double b = b_product(in.G);
  const double N = in.f_energy * in.phi_energy;
  const double lhs = field_entropy(in.G);
  const double rhs =
      (std::log(2.0) - std::log(2.0 * std::numbers::pi) - std::log(b)) * N / (2.0 * std::numbers::pi * std::numbers::pi) - (N > 0 ? N * std::log(N) : 0.0);
  auto r = make_report("entropic", lhs, rhs, Orientation::LhsAtLeastRhs);
  r.params = json{{"b1b2", b}, {"threshold", kEntropicThreshold}};
  r.conventions = {"|b| = |b1 b2|", "0 ln 0 = 0 below 1e-300"};
  if (b < kEntropicThreshold * (1.0 - 1e-12)) {
    r.status = CheckStatus::PreconditionUnmet;
    r.conventions.push_back("precondition |b1 b2| >= 1/(4 pi^2) unmet; not asserted");
  }
  return detail::stamp(std::move(r), in);
}

namespace detail {

inline double lieb_up_bound(double b, double eps, double s) {
  const double D = lieb_constant(s);
  return b * std::pow(1.0 - eps * eps, s / (s - 2.0)) * std::pow(D / (2.0 * std::numbers::pi), 2.0 * s / (2.0 - s));
}

}  // namespace detail

/// Lieb UP on the greedy essential support at level eps:
/// |b| (1 - eps^2)^{s/(s-2)} (D/2pi)^{2s/(2-s)} <= |Omega|.
inline InequalityReport check_lieb_up(const CheckInputs& in, double eps, double s) {
  if (!(s > 2.0)) throw Error(ErrorKind::InvalidArgument, "Lieb uncertainty needs s > 2");
  const auto omega = essential_support(in.G, eps);
  auto r = make_report("lieb_up", detail::lieb_up_bound(b_product(in.G), eps, s), omega.measure,
                       Orientation::LhsAtMostRhs);
  r.params = json{{"s", s}, {"eps", eps}, {"eps_achieved", omega.epsilon}, {"cells", omega.count}};
  r.conventions = {"|b| = |b1 b2|", "Omega = greedy essential support, measure = cells * dw du"};
  return detail::stamp(std::move(r), in);
}

/// Lieb UP for a caller-chosen set; eps is the field's concentration on it.
inline InequalityReport check_lieb_up_set(const CheckInputs& in, const std::vector<std::uint8_t>& set, double s) {
  if (!(s > 2.0)) throw Error(ErrorKind::InvalidArgument, "Lieb uncertainty needs s > 2");
  const auto c = concentration_eps(in.G, set);
  auto r = make_report("lieb_up_set", detail::lieb_up_bound(b_product(in.G), c.epsilon, s), c.measure,
                       Orientation::LhsAtMostRhs);
  r.params = json{{"s", s}, {"eps", c.epsilon}, {"cells", c.count}};
  r.conventions = {"|b| = |b1 b2|"};
  return detail::stamp(std::move(r), in);
}

/// Donoho-Stark at one shift: |Lambda| |b1 b2| |Xi| >= 2 pi (1 - eps_L - eps_X)^2,
/// eps_L from the modified signal on Lambda, eps_X from the field slice on Xi.
inline InequalityReport check_donoho_stark(const CheckInputs& in, std::size_t u1, std::size_t u2,
                                           const IndexSet2D& lambda, const IndexSet2D& xi) {
  const Grid2D& U = in.G.shift_grid();
  if (u1 >= U.n1 || u2 >= U.n2) throw Error(ErrorKind::InvalidArgument, "shift index out of range");
  const auto fu = modified_signal(in.f, in.phi, U.x1(u1), U.x2(u2));
  const auto slice = in.G.slice(u1, u2);
  if (!(energy(fu) > 0.0) || !(energy(slice) > 0.0))
    throw Error(ErrorKind::InvalidArgument, "Donoho-Stark needs a nonzero modified signal and slice");
  const auto cl = concentration_eps(fu, lambda);
  const auto cx = concentration_eps(slice, xi);
  const double b = b_product(in.G);
  const double defect = 1.0 - cl.epsilon - cx.epsilon;
  auto r = make_report("donoho_stark", cl.measure * b * cx.measure, 2.0 * std::numbers::pi * defect * defect,
                       Orientation::LhsAtLeastRhs);
  r.params = json{{"u1", U.x1(u1)},       {"u2", U.x2(u2)},       {"eps_lambda", cl.epsilon},
                  {"eps_xi", cx.epsilon}, {"lambda", cl.measure}, {"xi", cx.measure}};
  r.conventions = {"|b Xi| = |b1 b2| |Xi|", "time set measured on the modified signal at fixed u"};
  if (defect <= 0.0) {
    r.status = CheckStatus::Vacuous;
    r.conventions.push_back("eps_lambda + eps_xi >= 1: bound is vacuous");
  }
  return detail::stamp(std::move(r), in);
}

/// Donoho-Stark with both sets taken as greedy essential supports at eps.
inline InequalityReport check_donoho_stark_essential(const CheckInputs& in, std::size_t u1, std::size_t u2,
                                                     double eps) {
  const Grid2D& U = in.G.shift_grid();
  const auto fu = modified_signal(in.f, in.phi, U.x1(u1), U.x2(u2));
  const auto slice = in.G.slice(u1, u2);
  const auto lambda = to_index_set(fu.grid(), essential_support(fu, eps));
  const auto xi = to_index_set(slice.grid(), essential_support(slice, eps));
  auto r = check_donoho_stark(in, u1, u2, lambda, xi);
  r.params["eps_target"] = eps;
  return r;
}

/// Heisenberg: (int |x|^2 |f|^2 * int |w|^2 |G|^2)^{1/2} >= sqrt(b1^2 + b2^2) / (4 pi),
/// evaluated after rescaling to |f| = 1, |phi| = 2 pi.
inline InequalityReport check_heisenberg(const CheckInputs& in) {
  if (!(in.f_energy > 0.0) || !(in.phi_energy > 0.0))
    throw Error(ErrorKind::InvalidArgument, "Heisenberg check needs nonzero f and window");
  const double xm = signal_moment(in.f, Weight::power(2)).value;
  const double wm = field_moment(in.G, Weight::power(2)).value;
  const double scale = 4.0 * std::numbers::pi * std::numbers::pi / (in.f_energy * in.f_energy * in.phi_energy);
  auto r = make_report("heisenberg", std::sqrt(xm * wm * scale), b_euclid(in.G) / (4.0 * std::numbers::pi),
                       Orientation::LhsAtLeastRhs);
  r.params = json{{"x_moment", xm}, {"w_moment", wm}, {"field_energy", field_energy(in.G)}};
  r.conventions = {"|b| = sqrt(b1^2 + b2^2)", "inputs rescaled to |f|^2 = 1, |phi|^2 = 4 pi^2"};
  return detail::stamp(std::move(r), in);
}

}  // namespace qwlct
