#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qwlct/error.hpp"
#include "qwlct/field.hpp"
#include "qwlct/grid.hpp"
#include "qwlct/lct_params.hpp"
#include "qwlct/parallel.hpp"
#include "qwlct/qlct.hpp"
#include "qwlct/report.hpp"
#include "qwlct/signal.hpp"
#include "qwlct/summation.hpp"

namespace qwlct {

namespace detail {

struct ShiftIndex {
  long long m1;
  long long m2;
};

// Sample offsets of every shift row/column, checked once per transform.
inline std::pair<std::vector<long long>, std::vector<long long>> shift_offsets(const Grid2D& shift,
                                                                               const Grid2D& spatial) {
  require_shift_aligned(shift, spatial);
  const long long o1 = *lattice_index(shift.x1_min, spatial.dx1), s1 = *lattice_index(shift.dx1, spatial.dx1);
  const long long o2 = *lattice_index(shift.x2_min, spatial.dx2), s2 = *lattice_index(shift.dx2, spatial.dx2);
  std::vector<long long> a(shift.n1), b(shift.n2);
  for (std::size_t k = 0; k < shift.n1; ++k) a[k] = o1 + static_cast<long long>(k) * s1;
  for (std::size_t k = 0; k < shift.n2; ++k) b[k] = o2 + static_cast<long long>(k) * s2;
  return {a, b};
}

// phi(x - u) for u = (m1 dx1, m2 dx2), zero outside the sampled window.
inline const Quaternion* window_at(const QSignal2D& phi, long long k1, long long k2, ShiftIndex s) {
  const long long a = k1 - s.m1, b = k2 - s.m2;
  const auto& g = phi.grid();
  if (a < 0 || b < 0 || a >= static_cast<long long>(g.n1) || b >= static_cast<long long>(g.n2)) return nullptr;
  return &phi[static_cast<std::size_t>(a) * g.n2 + static_cast<std::size_t>(b)];
}

inline std::vector<Quaternion> modified_samples(const QSignal2D& f, const QSignal2D& phi, ShiftIndex s) {
  const auto& g = f.grid();
  std::vector<Quaternion> out(g.size());
  for (std::size_t a = 0; a < g.n1; ++a)
    for (std::size_t b = 0; b < g.n2; ++b) {
      const Quaternion* w = window_at(phi, static_cast<long long>(a), static_cast<long long>(b), s);
      if (w) out[g.index(a, b)] = f.at(a, b) * conj(*w);
    }
  return out;
}

inline void require_window(const QSignal2D& phi) {
  if (!(energy(phi) > 0.0)) throw Error(ErrorKind::InvalidArgument, "window must not vanish identically");
}

}  // namespace detail

/// f_u(x) = f(x) conj(phi(x - u)) for a lattice-aligned shift u.
inline QSignal2D modified_signal(const QSignal2D& f, const QSignal2D& phi, double u1, double u2) {
  require_same_grid(f.grid(), phi.grid(), "signal and window live on different grids");
  const auto m1 = lattice_index(u1, f.grid().dx1), m2 = lattice_index(u2, f.grid().dx2);
  if (!m1 || !m2) throw Error(ErrorKind::NotLatticeAligned, "window shift must be a multiple of the grid spacing");
  return {f.grid(), detail::modified_samples(f, phi, {*m1, *m2})};
}

struct QWLCTOptions {
  unsigned threads = 1;
  std::string window_id = "window";
};

/// G(w, u) = QLCT of f(x) conj(phi(x - u)) for every u in the shift grid.
inline QWLCTField qwlct_forward(const QSignal2D& f, const QSignal2D& phi, const LCTParams& A1, const LCTParams& A2,
                                const Grid2D& shift, const QWLCTOptions& opt = {}) {
  require_nondegenerate(A1, A2);
  require_same_grid(f.grid(), phi.grid(), "signal and window live on different grids");
  detail::require_window(phi);
  const auto [o1, o2] = detail::shift_offsets(shift, f.grid());
  const QLCTPlan plan(f.grid(), A1, A2);
  const std::size_t ns = plan.output_grid().size();
  std::vector<Quaternion> values(ns * shift.size());
  parallel_for(shift.size(), opt.threads, [&, &o1 = o1, &o2 = o2](std::size_t s) {
    const std::size_t q1 = s / shift.n2, q2 = s % shift.n2;
    const auto slice = plan.forward(detail::modified_samples(f, phi, {o1[q1], o2[q2]}));
    std::copy(slice.begin(), slice.end(), values.begin() + static_cast<std::ptrdiff_t>(s * ns));
  });
  return {plan.output_grid(), shift, f.grid(), A1, A2, opt.window_id, std::move(values)};
}

/// (1/|phi|^2) sum_u QLCT^{-1}[G(., u)](x) phi(x - u) du.
inline QSignal2D qwlct_inverse(const QWLCTField& G, const QSignal2D& phi, unsigned threads = 1) {
  const Grid2D& spatial = G.spatial_grid();
  require_same_grid(spatial, phi.grid(), "window grid differs from the field's spatial grid");
  const double phi_energy = energy(phi);
  if (!(phi_energy > 0.0)) throw Error(ErrorKind::InvalidArgument, "window has zero norm");
  const auto [o1, o2] = detail::shift_offsets(G.shift_grid(), spatial);
  const QLCTPlan plan(spatial, G.a1(), G.a2());
  const Grid2D& shift = G.shift_grid();
  const std::size_t n = spatial.size(), ns = G.slice_size();

  // Slices are reduced in fixed-size blocks so the summation order never
  // depends on the thread count.
  constexpr std::size_t kBlock = 16;
  std::vector<Quaternion> acc(n);
  std::vector<std::vector<Quaternion>> parts(kBlock);
  for (std::size_t start = 0; start < shift.size(); start += kBlock) {
    const std::size_t count = std::min(kBlock, shift.size() - start);
    parallel_for(count, threads, [&, &o1 = o1, &o2 = o2](std::size_t t) {
      const std::size_t s = start + t;
      const std::size_t q1 = s / shift.n2, q2 = s % shift.n2;
      std::vector<Quaternion> slice(G.values().begin() + static_cast<std::ptrdiff_t>(s * ns),
                                    G.values().begin() + static_cast<std::ptrdiff_t>((s + 1) * ns));
      auto back = plan.inverse(slice);
      const detail::ShiftIndex si{o1[q1], o2[q2]};
      for (std::size_t a = 0; a < spatial.n1; ++a)
        for (std::size_t b = 0; b < spatial.n2; ++b) {
          const Quaternion* w = detail::window_at(phi, static_cast<long long>(a), static_cast<long long>(b), si);
          auto& v = back[spatial.index(a, b)];
          v = w ? v * *w : Quaternion{};
        }
      parts[t] = std::move(back);
    });
    for (std::size_t i = 0; i < n; ++i)
      acc[i] += pairwise_sum<Quaternion>(count, [&](std::size_t t) { return parts[t][i]; });
  }
  const double scale = shift.cell_area() / phi_energy;
  for (auto& q : acc) q *= scale;
  return {spatial, std::move(acc)};
}

/// Real scalar inner product of two fields on identical grids.
inline double field_inner(const QWLCTField& F, const QWLCTField& G) {
  if (!same_grid(F.freq_grid(), G.freq_grid()) || !same_grid(F.shift_grid(), G.shift_grid()))
    throw Error(ErrorKind::GridMismatch, "fields live on different grids");
  const auto& a = F.values();
  const auto& b = G.values();
  return pairwise_sum(a.size(),
                      [&](std::size_t i) {
                        return a[i].q0 * b[i].q0 + a[i].q1 * b[i].q1 + a[i].q2 * b[i].q2 + a[i].q3 * b[i].q3;
                      }) *
         F.cell_measure();
}

inline json matrix_json(const LCTParams& A) {
  return json{{"a", A.a()}, {"b", A.b()}, {"c", A.c()}, {"d", A.d()}};
}

inline json field_params(const QWLCTField& G) {
  return json{{"A1", matrix_json(G.a1())},
              {"A2", matrix_json(G.a2())},
              {"n1", G.spatial_grid().n1},
              {"n2", G.spatial_grid().n2},
              {"n_u1", G.shift_grid().n1},
              {"n_u2", G.shift_grid().n2},
              {"window", G.window_id()}};
}

inline std::vector<std::string> b_sign_notes(const QWLCTField& G) {
  if (G.a1().b() < 0.0 || G.a2().b() < 0.0)
    return {"negative b: kernel magnitude uses 1/sqrt(2 pi |b|), sign enters through x w / b"};
  return {};
}

/// Energy identity sum |G|^2 dw du = |f|^2 |phi|^2.
inline InequalityReport parseval_check(const QSignal2D& f, const QSignal2D& phi, const QWLCTField& G,
                                       double rel_tol = 1e-2) {
  const double lhs = field_energy(G);
  const double rhs = energy(f) * energy(phi);
  auto r = make_report("parseval", lhs, rhs, Orientation::Equal, rel_tol);
  r.params = field_params(G);
  r.conventions = b_sign_notes(G);
  r.conventions.push_back("Riemann sums over both the w and u lattices");
  return r;
}

/// Polarized energy identities for a second signal g and window psi.
/// The general identity is checked in the order the integrals actually
/// combine, [ (int conj(g) f) (int conj(phi) psi) ]_0, and the swapped order
/// [ (int f conj(g)) (int phi conj(psi)) ]_0 is kept as a diagnostic.
inline std::vector<InequalityReport> polarized_parseval_checks(const QSignal2D& f, const QSignal2D& g,
                                                               const QSignal2D& phi, const QSignal2D& psi,
                                                               const LCTParams& A1, const LCTParams& A2,
                                                               const Grid2D& shift, double rel_tol = 1e-2,
                                                               unsigned threads = 1) {
  const auto Gff = qwlct_forward(f, phi, A1, A2, shift, {threads, "phi"});
  const auto Ggp = qwlct_forward(g, phi, A1, A2, shift, {threads, "phi"});
  const auto Gfq = qwlct_forward(f, psi, A1, A2, shift, {threads, "psi"});
  const auto Ggq = qwlct_forward(g, psi, A1, A2, shift, {threads, "psi"});
  std::vector<InequalityReport> out;
  const double scale_same_window = std::sqrt(energy(f) * energy(g)) * energy(phi);
  auto same_window = make_report("parseval_same_window", field_inner(Gff, Ggp), energy(phi) * scalar_inner(f, g),
                                 Orientation::Equal);
  same_window.tolerance = rel_tol * scale_same_window;
  same_window.margin = same_window.tolerance - std::fabs(same_window.lhs - same_window.rhs);
  same_window.satisfied = same_window.margin >= 0;
  out.push_back(same_window);

  const double scale_same_signal = energy(f) * std::sqrt(energy(phi) * energy(psi));
  auto same_signal = make_report("parseval_same_signal", field_inner(Gff, Gfq), energy(f) * scalar_inner(phi, psi),
                                 Orientation::Equal);
  same_signal.tolerance = rel_tol * scale_same_signal;
  same_signal.margin = same_signal.tolerance - std::fabs(same_signal.lhs - same_signal.rhs);
  same_signal.satisfied = same_signal.margin >= 0;
  out.push_back(same_signal);

  const double lhs = field_inner(Gff, Ggq);
  const double scale = std::sqrt(energy(f) * energy(g) * energy(phi) * energy(psi));
  const Quaternion fg_swapped = inner_product(conj(g), conj(f));  // int conj(g) f
  const Quaternion phipsi_swapped = inner_product(conj(phi), conj(psi));  // int conj(phi) psi
  auto general = make_report("parseval_polarized", lhs, scalar_part(fg_swapped * phipsi_swapped), Orientation::Equal);
  general.tolerance = rel_tol * scale;
  general.margin = general.tolerance - std::fabs(general.lhs - general.rhs);
  general.satisfied = general.margin >= 0;
  general.conventions.push_back("rhs = [ (int conj(g) f dx) (int conj(phi) psi dx) ]_0");
  out.push_back(general);

  auto literal = make_report("parseval_polarized_literal", lhs,
                             scalar_part(inner_product(f, g) * inner_product(phi, psi)), Orientation::Equal);
  literal.tolerance = rel_tol * scale;
  literal.margin = literal.tolerance - std::fabs(literal.lhs - literal.rhs);
  literal.satisfied = literal.margin >= 0;
  literal.status = CheckStatus::Diagnostic;
  literal.conventions.push_back("rhs = [ (f, g) (phi, psi) ]_0 in the literal factor order");
  out.push_back(literal);
  for (auto& r : out) r.params = field_params(Gff);
  return out;
}

namespace detail {

inline long long aligned_steps(double value, double step, const char* what) {
  const auto m = lattice_index(value, step);
  if (!m) throw Error(ErrorKind::NotLatticeAligned, what);
  return *m;
}

// Max |lhs(w,u) - phase_l * G(w - dw_shift, u - du_shift) * phase_r| over the
// indices where both sides lie on the lattices.
template <class Left, class Right>
double covariance_deviation(const QWLCTField& lhs, const QWLCTField& base, long long pw1, long long pw2,
                            long long pu1, long long pu2, Left&& left_phase, Right&& right_phase) {
  const Grid2D& W = lhs.freq_grid();
  const Grid2D& U = lhs.shift_grid();
  double dev = 0.0;
  for (long long u1 = 0; u1 < static_cast<long long>(U.n1); ++u1) {
    const long long s1 = u1 - pu1;
    if (s1 < 0 || s1 >= static_cast<long long>(U.n1)) continue;
    for (long long u2 = 0; u2 < static_cast<long long>(U.n2); ++u2) {
      const long long s2 = u2 - pu2;
      if (s2 < 0 || s2 >= static_cast<long long>(U.n2)) continue;
      for (long long w1 = 0; w1 < static_cast<long long>(W.n1); ++w1) {
        const long long v1 = w1 - pw1;
        if (v1 < 0 || v1 >= static_cast<long long>(W.n1)) continue;
        const Quaternion lp = left_phase(W.x1(static_cast<std::size_t>(w1)));
        for (long long w2 = 0; w2 < static_cast<long long>(W.n2); ++w2) {
          const long long v2 = w2 - pw2;
          if (v2 < 0 || v2 >= static_cast<long long>(W.n2)) continue;
          const Quaternion expect = lp *
                                    base.at(static_cast<std::size_t>(s1), static_cast<std::size_t>(s2),
                                            static_cast<std::size_t>(v1), static_cast<std::size_t>(v2)) *
                                    right_phase(W.x2(static_cast<std::size_t>(w2)));
          const Quaternion got = lhs.at(static_cast<std::size_t>(u1), static_cast<std::size_t>(u2),
                                        static_cast<std::size_t>(w1), static_cast<std::size_t>(w2));
          dev = std::fmax(dev, norm(got - expect));
        }
      }
    }
  }
  return dev;
}

}  // namespace detail

/// Shift covariance
///   G{T_r f}(w, u) = e^{i(c1 r1 w1 - a1 c1 r1^2/2)} G{f}(w - a r, u - r) e^{j(...)}
/// and modulation covariance
///   G{M_s f}(w, u) = e^{i(d1 s1 w1 - b1 d1 s1^2/2)} G{f}(w - s b, u) e^{j(...)},
/// both compared on the overlap of the lattices. Modulation covariance holds
/// when the window commutes with e^{j x2 s2}, e.g. a real window.
inline std::pair<InequalityReport, InequalityReport> covariance_checks(const QSignal2D& f, const QSignal2D& phi,
                                                                       const LCTParams& A1, const LCTParams& A2,
                                                                       const Grid2D& shift, double r1, double r2,
                                                                       double s1, double s2, unsigned threads = 1,
                                                                       double rel_tol = 1e-6) {
  const auto G = qwlct_forward(f, phi, A1, A2, shift, {threads, "phi"});
  const Grid2D& W = G.freq_grid();
  const double gmax = field_max_abs(G);

  const long long pu1 = detail::aligned_steps(r1, shift.dx1, "shift r must be a multiple of the shift spacing");
  const long long pu2 = detail::aligned_steps(r2, shift.dx2, "shift r must be a multiple of the shift spacing");
  const long long pw1 = detail::aligned_steps(A1.a() * r1, W.dx1, "a r must be a multiple of the frequency spacing");
  const long long pw2 = detail::aligned_steps(A2.a() * r2, W.dx2, "a r must be a multiple of the frequency spacing");
  const auto Gt = qwlct_forward(translate(f, r1, r2), phi, A1, A2, shift, {threads, "phi"});
  const double dev_shift = detail::covariance_deviation(
      Gt, G, pw1, pw2, pu1, pu2,
      [&](double w1) { return exp_axis(ImagAxis::I, A1.c() * r1 * w1 - 0.5 * A1.a() * A1.c() * r1 * r1); },
      [&](double w2) { return exp_axis(ImagAxis::J, A2.c() * r2 * w2 - 0.5 * A2.a() * A2.c() * r2 * r2); });

  const long long qw1 = detail::aligned_steps(s1 * A1.b(), W.dx1, "s b must be a multiple of the frequency spacing");
  const long long qw2 = detail::aligned_steps(s2 * A2.b(), W.dx2, "s b must be a multiple of the frequency spacing");
  const auto Gm = qwlct_forward(modulate(f, s1, s2), phi, A1, A2, shift, {threads, "phi"});
  const double dev_mod = detail::covariance_deviation(
      Gm, G, qw1, qw2, 0, 0,
      [&](double w1) { return exp_axis(ImagAxis::I, A1.d() * s1 * w1 - 0.5 * A1.b() * A1.d() * s1 * s1); },
      [&](double w2) { return exp_axis(ImagAxis::J, A2.d() * s2 * w2 - 0.5 * A2.b() * A2.d() * s2 * s2); });

  auto shift_report = make_report("shift_covariance", dev_shift, rel_tol * gmax, Orientation::LhsAtMostRhs, 0.0);
  shift_report.params = field_params(G);
  shift_report.params["r1"] = r1;
  shift_report.params["r2"] = r2;
  shift_report.params["max_abs_G"] = gmax;
  shift_report.conventions = {"lhs = max deviation over the lattice overlap", "rhs = tolerance * max |G|"};
  auto mod_report = make_report("modulation_covariance", dev_mod, rel_tol * gmax, Orientation::LhsAtMostRhs, 0.0);
  mod_report.params = field_params(G);
  mod_report.params["s1"] = s1;
  mod_report.params["s2"] = s2;
  mod_report.params["max_abs_G"] = gmax;
  mod_report.conventions = shift_report.conventions;
  mod_report.conventions.push_back("window must commute with e^{j x2 s2}");
  return {shift_report, mod_report};
}

/// G_{P phi}{P f}(w, u) = G_phi{f}(-w, -u) on origin-symmetric grids. The
/// lowest frequency bin has no mirror on an even lattice and is skipped.
inline InequalityReport parity_check(const QSignal2D& f, const QSignal2D& phi, const LCTParams& A1,
                                     const LCTParams& A2, const Grid2D& shift, unsigned threads = 1,
                                     double rel_tol = 1e-9) {
  if (!f.grid().is_symmetric()) throw Error(ErrorKind::InvalidArgument, "parity needs an origin-centered grid");
  if (!shift.is_symmetric()) throw Error(ErrorKind::InvalidArgument, "parity needs an origin-centered shift grid");
  const auto G = qwlct_forward(f, phi, A1, A2, shift, {threads, "phi"});
  const auto Gp = qwlct_forward(reflect(f), reflect(phi), A1, A2, shift, {threads, "P phi"});
  const Grid2D& W = G.freq_grid();
  const std::size_t nw1 = W.n1, nw2 = W.n2, nu1 = shift.n1, nu2 = shift.n2;
  double dev = 0.0;
  for (std::size_t u1 = 0; u1 < nu1; ++u1)
    for (std::size_t u2 = 0; u2 < nu2; ++u2)
      for (std::size_t w1 = 1; w1 < nw1; ++w1)
        for (std::size_t w2 = 1; w2 < nw2; ++w2)
          dev = std::fmax(dev, norm(Gp.at(u1, u2, w1, w2) - G.at(nu1 - 1 - u1, nu2 - 1 - u2, nw1 - w1, nw2 - w2)));
  const double gmax = field_max_abs(G);
  auto r = make_report("parity", dev, rel_tol * gmax, Orientation::LhsAtMostRhs, 0.0);
  r.params = field_params(G);
  r.params["max_abs_G"] = gmax;
  r.conventions = {"lhs = max deviation", "rhs = tolerance * max |G|", "lowest w bin excluded (no mirror image)"};
  return r;
}

}  // namespace qwlct
