#include "cli/commands.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <random>

#include <CLI11.hpp>

#include "qwlct/generators.hpp"
#include "qwlct/qft.hpp"
#include "qwlct/qlct.hpp"

namespace qwlct::cli {

namespace fs = std::filesystem;

namespace {

void write_json(const ExperimentConfig& c, const std::string& name, const json& j) {
  detail::write_file(fs::path(c.out) / name, j.dump(2) + "\n");
}

void write_text(const ExperimentConfig& c, const std::string& name, const std::string& text) {
  detail::write_file(fs::path(c.out) / name, text);
}

MatrixSet primary_matrices(const ExperimentConfig& c) {
  if (!c.matrices.empty()) return c.matrices.front();
  return {"paper", LCTParams::example(), LCTParams::example()};
}

GaussianPairParams pair_params(const ExperimentConfig& c) { return {c.beta, c.u0, c.v0}; }

QSignal2D load_source(const ExperimentConfig& c) {
  const auto& t = c.transform;
  switch (t.source) {
    case SignalSource::File: return read_signal(t.input);
    case SignalSource::Impulse: return impulse_at_origin(Grid2D::centered(c.grid.n, c.grid.half_width));
    case SignalSource::Paper: break;
  }
  return make_paper_gaussian(Grid2D::centered(c.grid.n, c.grid.half_width), pair_params(c));
}

QSignal2D make_window(const ExperimentConfig& c, const Grid2D& g) {
  if (c.transform.window == WindowKind::Gaussian) return gaussian_window(g, c.transform.sigma);
  return make_paper_window(g, pair_params(c));
}

std::string window_id(const ExperimentConfig& c) {
  return c.transform.window == WindowKind::Gaussian ? "gaussian(sigma=" + format_g17(c.transform.sigma) + ")"
                                                    : "paper(beta=" + format_g17(c.beta) + ")";
}

Grid2D shift_for(const ExperimentConfig& c, const Grid2D& g) {
  if (g.n1 % c.grid.stride != 0 || g.n2 % c.grid.stride != 0)
    throw Error(ErrorKind::Config, "key 'grid.stride': must divide the signal sizes");
  return default_shift_grid(g, c.grid.stride);
}

const char* kind_name(TransformKind k) {
  switch (k) {
    case TransformKind::Qft: return "qft";
    case TransformKind::Qlct: return "qlct";
    case TransformKind::Qwlct: return "qwlct";
  }
  return "?";
}

json grid_json(const Grid2D& g) {
  return {{"n1", g.n1}, {"n2", g.n2}, {"x1_min", g.x1_min}, {"dx1", g.dx1}, {"x2_min", g.x2_min}, {"dx2", g.dx2}};
}

}  // namespace

int cmd_transform(const ExperimentConfig& c, std::ostream& out) {
  const QSignal2D f = load_source(c);
  const MatrixSet m = primary_matrices(c);
  json summary{{"seed", c.seed}, {"kind", kind_name(c.transform.kind)}, {"input_grid", grid_json(f.grid())},
               {"input_energy", energy(f)}};
  std::string file = c.transform.output;
  switch (c.transform.kind) {
    case TransformKind::Qft: {
      const auto F = qft_forward_fast(f);
      if (file.empty()) file = "transform.qsig";
      write_qsig(F, fs::path(c.out) / file);
      summary["output_grid"] = grid_json(F.grid());
      summary["energy"] = energy(F);
      summary["energy_over_4pi2"] = spectral_energy(F);
      break;
    }
    case TransformKind::Qlct: {
      const auto F = qlct_forward(f, m.A1, m.A2);
      if (file.empty()) file = "transform.qsig";
      write_qsig(F, fs::path(c.out) / file);
      summary["A1"] = matrix_json(m.A1);
      summary["A2"] = matrix_json(m.A2);
      summary["output_grid"] = grid_json(F.grid());
      summary["energy"] = energy(F);
      break;
    }
    case TransformKind::Qwlct: {
      const auto phi = make_window(c, f.grid());
      const auto G = qwlct_forward(f, phi, m.A1, m.A2, shift_for(c, f.grid()), {c.threads, window_id(c)});
      if (file.empty()) file = "field.qwf4";
      write_qwf4(G, fs::path(c.out) / file);
      summary["A1"] = matrix_json(m.A1);
      summary["A2"] = matrix_json(m.A2);
      summary["window"] = window_id(c);
      summary["window_energy"] = energy(phi);
      summary["energy"] = field_energy(G);
      summary["expected_energy"] = energy(f) * energy(phi);
      break;
    }
  }
  summary["output"] = file;
  write_json(c, "transform.json", summary);
  out << summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_spectrogram(const ExperimentConfig& c, std::ostream& out) {
  const QSignal2D f = load_source(c);
  const MatrixSet m = primary_matrices(c);
  const auto phi = make_window(c, f.grid());
  const auto G = qwlct_forward(f, phi, m.A1, m.A2, shift_for(c, f.grid()), {c.threads, window_id(c)});
  const auto& s = c.spectrogram;
  const Grid2D& sel = s.slice == SliceKind::FixedShift ? G.shift_grid() : G.freq_grid();
  const auto idx = s.index.value_or(std::pair{sel.n1 / 2, sel.n2 / 2});
  write_text(c, "spectrogram.csv", spectrogram_csv(G, s.slice, idx.first, idx.second));
  const json meta{{"seed", c.seed},
                  {"slice", s.slice == SliceKind::FixedShift ? "shift" : "frequency"},
                  {"index", {idx.first, idx.second}},
                  {"coordinate", {sel.x1(idx.first), sel.x2(idx.second)}},
                  {"A1", matrix_json(m.A1)},
                  {"A2", matrix_json(m.A2)},
                  {"window", window_id(c)}};
  write_json(c, "spectrogram.json", meta);
  out << "wrote " << (fs::path(c.out) / "spectrogram.csv").string() << "\n";
  return kExitOk;
}

int cmd_verify(const ExperimentConfig& c, std::ostream& out) {
  SuiteOptions o = c.verify.suite;
  o.threads = c.threads;
  if (!c.verify.all) o.checks = {c.verify.checks.begin(), c.verify.checks.end()};
  const auto corpus = default_corpus(c.seed, c.verify.corpus);
  const auto matrices = c.matrices.empty() ? default_matrix_sets() : c.matrices;
  const auto reports = run_suite(corpus, matrices, o);

  std::size_t asserted = 0, failed = 0, diagnostic = 0, unmet = 0, vacuous = 0;
  json failures = json::array();
  for (const auto& r : reports) {
    switch (r.status) {
      case CheckStatus::Asserted: ++asserted; break;
      case CheckStatus::Diagnostic: ++diagnostic; break;
      case CheckStatus::PreconditionUnmet: ++unmet; break;
      case CheckStatus::Vacuous: ++vacuous; break;
    }
    if (r.failed()) {
      ++failed;
      failures.push_back(r.name + ":" + r.case_id);
    }
  }
  json mats = json::array();
  for (const auto& m : matrices) mats.push_back({{"name", m.name}, {"A1", matrix_json(m.A1)}, {"A2", matrix_json(m.A2)}});
  const json summary{{"reports", reports.size()}, {"asserted", asserted},   {"failed", failed},
                     {"diagnostic", diagnostic},  {"precondition_unmet", unmet}, {"vacuous", vacuous},
                     {"failures", failures}};
  const json doc{{"seed", c.seed}, {"matrix_sets", mats}, {"summary", summary}, {"reports", reports_json(reports)}};
  write_json(c, "verify.json", doc);
  write_text(c, "verify.csv", reports_csv(reports));
  out << "verify: " << reports.size() << " reports, " << asserted << " asserted, " << failed << " failed, "
      << unmet << " precondition unmet, " << vacuous << " vacuous, " << diagnostic << " diagnostic (seed " << c.seed
      << ")\n";
  for (const auto& r : reports)
    if (r.status == CheckStatus::PreconditionUnmet)
      out << "  precondition unmet: " << r.name << ":" << r.case_id << "\n";
  constexpr std::size_t kListed = 20;
  for (std::size_t t = 0; t < failures.size() && t < kListed; ++t)
    out << "  FAILED " << failures[t].get<std::string>() << "\n";
  if (failures.size() > kListed)
    out << "  ... " << failures.size() - kListed << " more in " << (fs::path(c.out) / "verify.json").string() << "\n";
  return failed == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_paper_example(const ExperimentConfig& c, std::ostream& out) {
  PaperExampleConfig pc;
  pc.beta = c.beta;
  pc.u0 = c.u0;
  pc.v0 = c.v0;
  const MatrixSet m = primary_matrices(c);
  pc.A1 = m.A1;
  pc.A2 = m.A2;
  pc.n = c.grid.n;
  pc.half_width = c.grid.half_width;
  pc.stride = c.grid.stride;
  pc.threads = c.threads;
  const auto r = run_paper_example(pc);
  const double pi = std::numbers::pi;
  std::vector<InequalityReport> checks = {
      make_report("f_energy", r.f_energy, 1.0, Orientation::Equal, 1e-6),
      make_report("phi_energy", r.phi_energy, 4.0 * pi * pi, Orientation::Equal, 1e-4),
      make_report("x_moment", r.x_moment, c.beta, Orientation::Equal, 1e-4),
      make_report("field_energy", r.field_energy, r.f_energy * r.phi_energy, Orientation::Equal, 1e-2),
      r.heisenberg,
  };
  for (auto& ch : checks) {
    ch.case_id = "paper_example";
    ch.seed = c.seed;
  }
  json doc = paper_example_json(r);
  doc["seed"] = c.seed;
  doc["checks"] = reports_json(checks);
  write_json(c, "paper_example.json", doc);
  for (const auto& ch : checks)
    out << ch.name << ": lhs " << format_g17(ch.lhs) << " rhs " << format_g17(ch.rhs)
        << (ch.satisfied ? " ok" : " FAILED") << "\n";
  out << "field second moment (quadrature) " << format_g17(r.w_moment) << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  return any_failed(checks) ? kExitCheckFailed : kExitOk;
}

int cmd_recover(const ExperimentConfig& c, std::ostream& out) {
  RecoveryConfig rc = c.recover;
  rc.seed = c.seed;
  rc.beta = c.beta;
  if (!c.matrices.empty()) {
    rc.A1 = c.matrices.front().A1;
    rc.A2 = c.matrices.front().A2;
  }
  const auto ex = run_recovery(rc);
  const json doc = recovery_json(ex);
  write_json(c, "recover.json", doc);
  out << "recover: error " << format_g17(ex.result.error) << " bound " << format_g17(ex.result.bound)
      << " iterations " << ex.result.iterations << " within_bound " << (ex.result.within_bound ? "true" : "false")
      << "\n";
  return ex.result.within_bound ? kExitOk : kExitCheckFailed;
}

int cmd_selftest(const ExperimentConfig& c, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  auto line = [&](const std::string& name, double value, double limit) {
    const bool pass = value <= limit;
    ok = ok && pass;
    out << (pass ? "PASS " : "FAIL ") << name << " " << format_g17(value) << " <= " << format_g17(limit) << "\n";
  };
  std::mt19937_64 rng(c.seed);
  const Grid2D g(16, 16, -2.0, 0.25, -1.6, 0.2);

  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  const double table = max_abs_component(i * j - k) + max_abs_component(j * k - i) + max_abs_component(k * i - j) +
                       max_abs_component(i * i + Quaternion::one()) + max_abs_component(j * i + k);
  line("quaternion_table", table, 0.0);

  double qft = 0.0, qlct = 0.0, qft_rt = 0.0, qlct_rt = 0.0;
  const LCTParams A1 = LCTParams::example(), A2 = LCTParams::shear();
  for (int t = 0; t < 4; ++t) {
    const auto f = random_signal(g, rng);
    const auto F = qft_forward_fast(f);
    qft = std::fmax(qft, max_component_diff(F, qft_forward_naive(f)));
    qft_rt = std::fmax(qft_rt, max_component_diff(qft_inverse(F, g), f) / max_abs(f));
    const auto L = qlct_forward(f, A1, A2);
    qlct = std::fmax(qlct, max_component_diff(L, qlct_forward_direct(f, A1, A2)));
    qlct_rt = std::fmax(qlct_rt, max_component_diff(qlct_inverse(L, A1, A2, g), f) / max_abs(f));
  }
  line("qft_fast_vs_naive", qft, 1e-10);
  line("qlct_fast_vs_direct", qlct, 1e-9);
  line("qft_round_trip", qft_rt, 1e-8);
  line("qlct_round_trip", qlct_rt, 1e-7);

  const Grid2D gs = Grid2D::centered(16, 3.0);
  const auto f = make_paper_gaussian(gs, {0.25});
  const auto phi = make_paper_window(gs, {0.25});
  const auto G = qwlct_forward(f, phi, A1, A1, default_shift_grid(gs, 1), {c.threads, "paper"});
  const double target = energy(f) * energy(phi);
  line("qwlct_parseval_rel", std::fabs(field_energy(G) - target) / target, 2e-2);

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  line("runtime_seconds", secs, 10.0);
  return ok ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------- parsing

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternion windowed linear canonical transform laboratory", "qwlct"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir, matrix_text, alpha_text, s_text, eps_text;
  std::uint64_t seed = 42;
  unsigned threads = 1;
  double beta = 0.0;
  auto* o_config = app.add_option("--config", config_path, "JSON experiment config");
  auto* o_seed = app.add_option("--seed", seed, "PRNG seed (default 42)");
  auto* o_threads = app.add_option("--threads", threads, "worker thread cap")->check(CLI::PositiveNumber);
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_beta = app.add_option("--beta", beta, "Gaussian width parameter")->check(CLI::PositiveNumber);
  auto* o_matrix = app.add_option("--matrix", matrix_text, "a,b,c,d[;a,b,c,d] for A1[;A2]");

  std::string kind, input, signal, window, output, slice, index_text, shape;
  double sigma = 0.5, tau = 0.25, noise = 0.0, half_width = 2.0;
  std::size_t n = 64, stride = 4, q_block = 14, max_iter = 200, random_count = 20;
  std::vector<std::string> checks;
  bool all = false;

  auto add_signal_opts = [&](CLI::App* sub) {
    sub->add_option("--in", input, "input signal (QSIG or .csv)");
    sub->add_option("--signal", signal, "paper | impulse | file")->check(CLI::IsMember({"paper", "impulse", "file"}));
    sub->add_option("--window", window, "paper | gaussian")->check(CLI::IsMember({"paper", "gaussian"}));
    sub->add_option("--sigma", sigma, "Gaussian window width")->check(CLI::PositiveNumber);
  };
  auto add_grid_opts = [&](CLI::App* sub) {
    sub->add_option("--n", n, "samples per axis");
    sub->add_option("--half-width", half_width, "grid half width")->check(CLI::PositiveNumber);
    sub->add_option("--stride", stride, "shift stride in samples");
  };

  auto* transform = app.add_subcommand("transform", "QFT / QLCT / QWLCT of a signal");
  transform->add_option("--kind", kind, "qft | qlct | qwlct")->check(CLI::IsMember({"qft", "qlct", "qwlct"}));
  transform->add_option("--output", output, "output file name inside --out");
  add_signal_opts(transform);
  add_grid_opts(transform);

  auto* spectrogram = app.add_subcommand("spectrogram", "|G|^2 slice as CSV");
  spectrogram->add_option("--slice", slice, "shift | frequency")->check(CLI::IsMember({"shift", "frequency"}));
  spectrogram->add_option("--index", index_text, "i1,i2 (default: central bin)");
  add_signal_opts(spectrogram);
  add_grid_opts(spectrogram);

  auto* verify = app.add_subcommand("verify", "run the uncertainty suite");
  verify->add_flag("--all", all, "run every check");
  verify->add_option("--check", checks, "check name (repeatable)");
  verify->add_option("--alpha", alpha_text, "Pitt exponents a,b,...");
  verify->add_option("--s", s_text, "Lieb exponents");
  verify->add_option("--eps", eps_text, "concentration levels");
  verify->add_option("--random-count", random_count, "random corpus size");

  auto* paper = app.add_subcommand("paper-example", "worked Gaussian example");
  add_grid_opts(paper);

  auto* recover = app.add_subcommand("recover", "bandlimited recovery experiment");
  recover->add_option("--tau", tau, "target |Q||T||b|/2pi");
  recover->add_option("--noise", noise, "noise level |n|/|f_u|");
  recover->add_option("--shape", shape, "random | block")->check(CLI::IsMember({"random", "block"}));
  recover->add_option("--q-block", q_block, "side of the centered band block");
  recover->add_option("--max-iter", max_iter, "iteration cap");
  recover->add_option("--n", n, "samples per axis");
  recover->add_option("--half-width", half_width, "grid half width")->check(CLI::PositiveNumber);

  auto* selftest = app.add_subcommand("selftest", "fast oracle checks at 16x16");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    ExperimentConfig c = o_config->count() ? load_config(config_path) : ExperimentConfig{};
    if (o_seed->count()) c.seed = seed;
    if (o_threads->count()) c.threads = threads;
    if (o_out->count()) c.out = out_dir;
    if (o_beta->count()) {
      c.beta = beta;
      c.verify.corpus.betas = {beta};
    }
    if (o_matrix->count()) c.matrices = {parse_matrix_flag(matrix_text)};

    auto given = [](CLI::App* sub, const char* name) { return sub->count(name) > 0; };
    for (CLI::App* sub : {transform, spectrogram}) {
      if (!sub->parsed()) continue;
      if (given(sub, "--in")) {
        c.transform.input = input;
        c.transform.source = SignalSource::File;
      }
      if (given(sub, "--signal"))
        c.transform.source = signal == "paper"     ? SignalSource::Paper
                             : signal == "impulse" ? SignalSource::Impulse
                                                   : SignalSource::File;
      if (given(sub, "--window")) c.transform.window = window == "gaussian" ? WindowKind::Gaussian : WindowKind::Paper;
      if (given(sub, "--sigma")) c.transform.sigma = sigma;
    }
    for (CLI::App* sub : {transform, spectrogram, paper}) {
      if (!sub->parsed()) continue;
      if (given(sub, "--n")) c.grid.n = n;
      if (given(sub, "--half-width")) c.grid.half_width = half_width;
      if (given(sub, "--stride")) c.grid.stride = stride;
    }
    if (transform->parsed()) {
      if (given(transform, "--kind"))
        c.transform.kind = kind == "qft" ? TransformKind::Qft : kind == "qlct" ? TransformKind::Qlct : TransformKind::Qwlct;
      if (given(transform, "--output")) c.transform.output = output;
    }
    if (spectrogram->parsed()) {
      if (given(spectrogram, "--slice"))
        c.spectrogram.slice = slice == "frequency" ? SliceKind::FixedFrequency : SliceKind::FixedShift;
      if (given(spectrogram, "--index")) {
        const auto v = parse_list(index_text, "--index");
        if (v.size() != 2 || v[0] < 0 || v[1] < 0 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]))
          throw Error(ErrorKind::Config, "key '--index': expected two non-negative integers i1,i2");
        c.spectrogram.index = std::pair{static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1])};
      }
    }
    if (verify->parsed()) {
      if (all) c.verify.all = true;
      if (!checks.empty()) c.verify.checks = checks;
      if (!c.verify.all && c.verify.checks.empty())
        throw Error(ErrorKind::Config, "verify needs --all or at least one --check");
      if (given(verify, "--alpha")) c.verify.suite.pitt_alpha = parse_list(alpha_text, "--alpha");
      if (given(verify, "--s")) {
        c.verify.suite.lieb_s = parse_list(s_text, "--s");
        c.verify.suite.lieb_up_s = c.verify.suite.lieb_s;
      }
      if (given(verify, "--eps")) c.verify.suite.eps = parse_list(eps_text, "--eps");
      if (given(verify, "--random-count")) c.verify.corpus.random_count = random_count;
    }
    if (recover->parsed()) {
      if (given(recover, "--tau")) c.recover.tau = tau;
      if (given(recover, "--noise")) c.recover.noise = noise;
      if (given(recover, "--shape")) c.recover.t_shape = shape == "block" ? EraseShape::Block : EraseShape::Random;
      if (given(recover, "--q-block")) c.recover.q_block = q_block;
      if (given(recover, "--max-iter")) c.recover.max_iter = max_iter;
      if (given(recover, "--n")) c.recover.n = n;
      if (given(recover, "--half-width")) c.recover.half_width = half_width;
    }
    validate(c);

    if (transform->parsed()) return cmd_transform(c, out);
    if (spectrogram->parsed()) return cmd_spectrogram(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
    if (paper->parsed()) return cmd_paper_example(c, out);
    if (recover->parsed()) return cmd_recover(c, out);
    if (selftest->parsed()) return cmd_selftest(c, out);
    return kExitConfigError;
  } catch (const Error& e) {
    err << "qwlct: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "qwlct: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace qwlct::cli
