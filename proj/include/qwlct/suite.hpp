#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qwlct/generators.hpp"
#include "qwlct/parallel.hpp"
#include "qwlct/qwlct.hpp"
#include "qwlct/report.hpp"
#include "qwlct/uncertainty.hpp"

namespace qwlct {

struct MatrixSet {
  std::string name;
  LCTParams A1;
  LCTParams A2;
};

inline std::vector<MatrixSet> default_matrix_sets() {
  return {{"paper", LCTParams::example(), LCTParams::example()},
          {"qft", LCTParams::fourier(), LCTParams::fourier()},
          {"shear", LCTParams::shear(), LCTParams::shear()}};
}

struct CorpusCase {
  std::string id;
  QSignal2D f;
  QSignal2D phi;
  Grid2D shift;
  std::uint64_t seed = 0;
};

struct CorpusOptions {
  std::vector<double> betas = {1.0 / 16.0, 0.25, 1.0};
  std::size_t random_count = 20;
  std::size_t n = 32;
  std::size_t stride = 2;
  double random_half_width = 4.0;
};

/// Paper Gaussian pairs (grid half-width 6 sqrt(beta)) plus seeded random
/// band-concentrated signals with rotated Gaussian windows.
inline std::vector<CorpusCase> default_corpus(std::uint64_t seed, const CorpusOptions& opt = {}) {
  std::vector<CorpusCase> out;
  for (double beta : opt.betas) {
    const Grid2D g = Grid2D::centered(opt.n, 6.0 * std::sqrt(beta));
    const GaussianPairParams p{beta};
    out.push_back({"gauss_beta=" + format_g17(beta), make_paper_gaussian(g, p), make_paper_window(g, p),
                   default_shift_grid(g, opt.stride), seed});
  }
  std::mt19937_64 master(seed);
  const Grid2D g = Grid2D::centered(opt.n, opt.random_half_width);
  for (std::size_t k = 0; k < opt.random_count; ++k) {
    const std::uint64_t s = master();
    std::mt19937_64 rng(s);
    auto f = random_band_concentrated(g, rng);
    std::uniform_real_distribution<double> sigma(0.5, 1.0);
    const double sg = sigma(rng);
    auto phi = gaussian_window(g, sg, random_unit_quaternion(rng));
    out.push_back({"random_" + std::to_string(k), std::move(f), std::move(phi), default_shift_grid(g, opt.stride), s});
  }
  return out;
}

struct SuiteOptions {
  std::set<std::string> checks;  // empty runs everything
  std::vector<double> lieb_s = {2.5, 3.0, 4.0};
  std::vector<double> lieb_up_s = {3.0, 4.0};
  std::vector<double> eps = {0.0, 0.1, 0.3};
  std::vector<double> pitt_alpha = {0.0, 0.5, 1.0, 2.0};
  double ds_eps = 0.1;
  unsigned threads = 1;
};

inline const std::vector<std::string>& suite_check_names() {
  static const std::vector<std::string> names = {"parseval", "pitt",          "lieb",      "log", "entropic",
                                                 "lieb_up",  "donoho_stark",  "heisenberg"};
  return names;
}

inline bool wants(const SuiteOptions& o, const char* name) { return o.checks.empty() || o.checks.count(name) != 0; }

/// Every requested check on one case; report order is fixed.
inline std::vector<InequalityReport> run_case(const CorpusCase& c, const MatrixSet& m, const SuiteOptions& o) {
  const auto in = make_check_inputs(c.f, c.phi, m.A1, m.A2, c.shift, m.name + "/" + c.id, c.seed);
  std::vector<InequalityReport> out;
  auto add = [&](const InequalityReport& r) { out.push_back(r); };
  if (wants(o, "parseval")) add(check_lieb_inequality(in, 2.0, 2e-2));
  if (wants(o, "pitt"))
    for (double a : o.pitt_alpha)
      for (const auto& r : check_pitt(in, a)) add(r);
  if (wants(o, "lieb"))
    for (double s : o.lieb_s) add(check_lieb_inequality(in, s));
  if (wants(o, "log"))
    for (const auto& r : check_log_up(in)) add(r);
  if (wants(o, "entropic")) add(check_entropic(in));
  if (wants(o, "lieb_up"))
    for (double s : o.lieb_up_s)
      for (double e : o.eps) add(check_lieb_up(in, e, s));
  if (wants(o, "donoho_stark")) {
    const Grid2D& U = in.G.shift_grid();
    const std::size_t u1 = U.n1 / 2, u2 = U.n2 / 2;
    auto full = check_donoho_stark(in, u1, u2, IndexSet2D::full(c.f.grid()), IndexSet2D::full(in.G.freq_grid()));
    full.name = "donoho_stark_full";
    add(full);
    add(check_donoho_stark_essential(in, u1, u2, o.ds_eps));
  }
  if (wants(o, "heisenberg")) add(check_heisenberg(in));
  if (out.empty()) throw Error(ErrorKind::Config, "no known check selected");
  for (auto& r : out) r.params["matrix_set"] = m.name;
  return out;
}

/// Cases are distributed over threads; each writes its own slot, so the
/// concatenated result does not depend on the thread count.
inline std::vector<InequalityReport> run_suite(const std::vector<CorpusCase>& corpus,
                                               const std::vector<MatrixSet>& matrices, const SuiteOptions& o) {
  for (const auto& name : o.checks) {
    const auto& known = suite_check_names();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw Error(ErrorKind::Config, "unknown check '" + name + "'");
  }
  const std::size_t jobs = corpus.size() * matrices.size();
  std::vector<std::vector<InequalityReport>> slots(jobs);
  parallel_for(jobs, o.threads, [&](std::size_t j) {
    slots[j] = run_case(corpus[j % corpus.size()], matrices[j / corpus.size()], o);
  });
  std::vector<InequalityReport> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  return out;
}

// ------------------------------------------------------------ paper example

struct PaperExampleConfig {
  double beta = 1.0 / 16.0;
  double u0 = 0.0;
  double v0 = 0.0;
  LCTParams A1 = LCTParams::example();
  LCTParams A2 = LCTParams::example();
  std::size_t n = 64;
  double half_width = 2.0;
  std::size_t stride = 4;
  unsigned threads = 1;
};

struct PaperExampleResult {
  double f_energy = 0.0;
  double phi_energy = 0.0;
  double x_moment = 0.0;
  double field_energy = 0.0;
  double w_moment = 0.0;
  InequalityReport heisenberg;
  double printed_w_moment = 0.0;
  double printed_product = 0.0;
  bool printed_consistent = false;
  std::vector<std::string> notes;
};

inline PaperExampleResult run_paper_example(const PaperExampleConfig& c) {
  const Grid2D g = Grid2D::centered(c.n, c.half_width);
  const GaussianPairParams p{c.beta, c.u0, c.v0};
  const auto in = make_check_inputs(make_paper_gaussian(g, p), make_paper_window(g, p), c.A1, c.A2,
                                    default_shift_grid(g, c.stride), "paper_example", 0, c.threads);
  const double pi = std::numbers::pi;
  PaperExampleResult r;
  r.f_energy = in.f_energy;
  r.phi_energy = in.phi_energy;
  r.x_moment = signal_moment(in.f, Weight::power(2)).value;
  r.field_energy = field_energy(in.G);
  r.w_moment = field_moment(in.G, Weight::power(2)).value;
  r.heisenberg = check_heisenberg(in);
  r.printed_w_moment = pi * pi / 256.0;
  r.printed_product = pi / 4.0;
  // A field moment of pi^2/256 with total energy 4 pi^2 would put the mean
  // |w|^2 at 1/1024, far from the quadrature value.
  r.printed_consistent = std::fabs(r.w_moment - r.printed_w_moment) <= 1e-2 * r.w_moment;
  r.notes.push_back("field energy " + format_g17(r.field_energy) + " vs |f|^2 |phi|^2 = " +
                    format_g17(r.f_energy * r.phi_energy));
  r.notes.push_back("printed field second moment pi^2/256 = " + format_g17(r.printed_w_moment) +
                    " disagrees with the quadrature value " + format_g17(r.w_moment) +
                    "; the printed value is incompatible with the energy identity and is not used");
  r.notes.push_back("printed moment product pi/4 = " + format_g17(r.printed_product) + " vs quadrature " +
                    format_g17(std::sqrt(r.x_moment * r.w_moment)));
  return r;
}

inline json paper_example_json(const PaperExampleResult& r) {
  return json{{"f_energy", r.f_energy},
              {"phi_energy", r.phi_energy},
              {"phi_energy_over_4pi2", r.phi_energy / (4.0 * std::numbers::pi * std::numbers::pi)},
              {"x_moment", r.x_moment},
              {"field_energy", r.field_energy},
              {"field_second_moment", r.w_moment},
              {"heisenberg", to_json(r.heisenberg)},
              {"printed_field_second_moment", r.printed_w_moment},
              {"printed_moment_product", r.printed_product},
              {"printed_values_consistent", r.printed_consistent},
              {"notes", r.notes}};
}

}  // namespace qwlct
