#include "cli/config.hpp"

#include <cmath>
#include <initializer_list>
#include <sstream>

namespace qwlct::cli {

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& msg) {
  throw Error(ErrorKind::Config, "key '" + key + "': " + msg);
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void allow_only(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where.empty() ? "<root>" : where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) fail(join(where, it.key()), "unknown key");
  }
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

double get_positive(const json& v, const std::string& key) {
  const double x = get_number(v, key);
  if (!(x > 0.0)) fail(key, "must be > 0");
  return x;
}

std::uint64_t get_count(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_numbers(const json& v, const std::string& key) {
  if (!v.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_number(v[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

LCTParams get_matrix(const json& v, const std::string& key) {
  const auto e = get_numbers(v, key);
  if (e.size() != 4) fail(key, "a matrix is [a, b, c, d]");
  try {
    return LCTParams(e[0], e[1], e[2], e[3]);
  } catch (const Error& err) {
    fail(key, err.what());
  }
}

void parse_grid(const json& j, GridSpec& g, const std::string& where) {
  allow_only(j, where, {"n", "half_width", "stride"});
  if (j.contains("n")) g.n = get_count(j["n"], join(where, "n"));
  if (j.contains("half_width")) g.half_width = get_positive(j["half_width"], join(where, "half_width"));
  if (j.contains("stride")) g.stride = get_count(j["stride"], join(where, "stride"));
}

void parse_matrices(const json& j, std::vector<MatrixSet>& out, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(where, "expected a non-empty array of matrix sets");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& m = j[i];
    allow_only(m, at, {"name", "A1", "A2"});
    if (!m.contains("A1")) fail(join(at, "A1"), "missing");
    MatrixSet s;
    s.name = m.contains("name") ? get_string(m["name"], join(at, "name")) : "custom_" + std::to_string(i);
    s.A1 = get_matrix(m["A1"], join(at, "A1"));
    s.A2 = m.contains("A2") ? get_matrix(m["A2"], join(at, "A2")) : s.A1;
    out.push_back(s);
  }
}

void parse_transform(const json& j, TransformSection& t) {
  const std::string w = "transform";
  allow_only(j, w, {"kind", "input", "signal", "output", "window", "sigma"});
  if (j.contains("kind")) {
    const auto k = get_string(j["kind"], "transform.kind");
    if (k == "qft") t.kind = TransformKind::Qft;
    else if (k == "qlct") t.kind = TransformKind::Qlct;
    else if (k == "qwlct") t.kind = TransformKind::Qwlct;
    else fail("transform.kind", "expected qft, qlct or qwlct");
  }
  if (j.contains("input")) {
    t.input = get_string(j["input"], "transform.input");
    t.source = SignalSource::File;
  }
  if (j.contains("signal")) {
    const auto s = get_string(j["signal"], "transform.signal");
    if (s == "paper") t.source = SignalSource::Paper;
    else if (s == "impulse") t.source = SignalSource::Impulse;
    else if (s == "file") t.source = SignalSource::File;
    else fail("transform.signal", "expected paper, impulse or file");
  }
  if (j.contains("output")) t.output = get_string(j["output"], "transform.output");
  if (j.contains("window")) {
    const auto s = get_string(j["window"], "transform.window");
    if (s == "paper") t.window = WindowKind::Paper;
    else if (s == "gaussian") t.window = WindowKind::Gaussian;
    else fail("transform.window", "expected paper or gaussian");
  }
  if (j.contains("sigma")) t.sigma = get_positive(j["sigma"], "transform.sigma");
}

void parse_spectrogram(const json& j, SpectrogramSection& s) {
  allow_only(j, "spectrogram", {"slice", "index"});
  if (j.contains("slice")) {
    const auto k = get_string(j["slice"], "spectrogram.slice");
    if (k == "shift") s.slice = SliceKind::FixedShift;
    else if (k == "frequency") s.slice = SliceKind::FixedFrequency;
    else fail("spectrogram.slice", "expected shift or frequency");
  }
  if (j.contains("index")) {
    const json& v = j["index"];
    if (!v.is_array() || v.size() != 2) fail("spectrogram.index", "expected [i1, i2]");
    s.index = std::pair{static_cast<std::size_t>(get_count(v[0], "spectrogram.index[0]")),
                        static_cast<std::size_t>(get_count(v[1], "spectrogram.index[1]"))};
  }
}

void parse_verify(const json& j, VerifySection& v) {
  allow_only(j, "verify", {"checks", "all", "alpha", "s", "lieb_up_s", "eps", "ds_eps", "random_count", "n",
                           "betas", "stride", "random_half_width"});
  if (j.contains("checks")) {
    const json& c = j["checks"];
    if (!c.is_array()) fail("verify.checks", "expected an array of check names");
    for (std::size_t i = 0; i < c.size(); ++i)
      v.checks.push_back(get_string(c[i], "verify.checks[" + std::to_string(i) + "]"));
  }
  if (j.contains("all")) {
    if (!j["all"].is_boolean()) fail("verify.all", "expected a boolean");
    v.all = j["all"].get<bool>();
  }
  if (j.contains("alpha")) v.suite.pitt_alpha = get_numbers(j["alpha"], "verify.alpha");
  if (j.contains("s")) v.suite.lieb_s = get_numbers(j["s"], "verify.s");
  if (j.contains("lieb_up_s")) v.suite.lieb_up_s = get_numbers(j["lieb_up_s"], "verify.lieb_up_s");
  if (j.contains("eps")) v.suite.eps = get_numbers(j["eps"], "verify.eps");
  if (j.contains("ds_eps")) v.suite.ds_eps = get_number(j["ds_eps"], "verify.ds_eps");
  if (j.contains("random_count")) v.corpus.random_count = get_count(j["random_count"], "verify.random_count");
  if (j.contains("n")) v.corpus.n = get_count(j["n"], "verify.n");
  if (j.contains("betas")) v.corpus.betas = get_numbers(j["betas"], "verify.betas");
  if (j.contains("stride")) v.corpus.stride = get_count(j["stride"], "verify.stride");
  if (j.contains("random_half_width"))
    v.corpus.random_half_width = get_positive(j["random_half_width"], "verify.random_half_width");
}

void parse_recover(const json& j, RecoveryConfig& r) {
  allow_only(j, "recover", {"n", "half_width", "q_block", "t_shape", "tau", "noise", "max_iter", "tol"});
  if (j.contains("n")) r.n = get_count(j["n"], "recover.n");
  if (j.contains("half_width")) r.half_width = get_positive(j["half_width"], "recover.half_width");
  if (j.contains("q_block")) r.q_block = get_count(j["q_block"], "recover.q_block");
  if (j.contains("t_shape")) {
    const auto s = get_string(j["t_shape"], "recover.t_shape");
    if (s == "random") r.t_shape = EraseShape::Random;
    else if (s == "block") r.t_shape = EraseShape::Block;
    else fail("recover.t_shape", "expected random or block");
  }
  if (j.contains("tau")) r.tau = get_number(j["tau"], "recover.tau");
  if (j.contains("noise")) r.noise = get_number(j["noise"], "recover.noise");
  if (j.contains("max_iter")) r.max_iter = get_count(j["max_iter"], "recover.max_iter");
  if (j.contains("tol")) r.tol = get_positive(j["tol"], "recover.tol");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig c;
  allow_only(j, "", {"seed", "threads", "out", "beta", "u0", "v0", "matrices", "grid", "transform", "spectrogram",
                     "verify", "recover"});
  if (j.contains("seed")) c.seed = get_count(j["seed"], "seed");
  if (j.contains("threads")) c.threads = static_cast<unsigned>(get_count(j["threads"], "threads"));
  if (j.contains("out")) c.out = get_string(j["out"], "out");
  if (j.contains("beta")) c.beta = get_positive(j["beta"], "beta");
  if (j.contains("u0")) c.u0 = get_number(j["u0"], "u0");
  if (j.contains("v0")) c.v0 = get_number(j["v0"], "v0");
  if (j.contains("matrices")) parse_matrices(j["matrices"], c.matrices, "matrices");
  if (j.contains("grid")) parse_grid(j["grid"], c.grid, "grid");
  if (j.contains("transform")) parse_transform(j["transform"], c.transform);
  if (j.contains("spectrogram")) parse_spectrogram(j["spectrogram"], c.spectrogram);
  if (j.contains("verify")) parse_verify(j["verify"], c.verify);
  if (j.contains("recover")) parse_recover(j["recover"], c.recover);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::Io, std::string("cannot read config: ") + e.what());
  }
  return parse_config(text);
}

std::vector<double> parse_list(const std::string& text, const char* key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      fail(key, "'" + item + "' is not a number");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size() || !std::isfinite(v)) fail(key, "'" + item + "' is not a finite number");
    out.push_back(v);
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

MatrixSet parse_matrix_flag(const std::string& text) {
  const auto semi = text.find(';');
  auto one = [](const std::string& part) {
    const auto e = parse_list(part, "--matrix");
    if (e.size() != 4) fail("--matrix", "each matrix needs four entries a,b,c,d");
    try {
      return LCTParams(e[0], e[1], e[2], e[3]);
    } catch (const Error& err) {
      fail("--matrix", err.what());
    }
  };
  MatrixSet m;
  m.name = "custom";
  m.A1 = one(text.substr(0, semi));
  m.A2 = semi == std::string::npos ? m.A1 : one(text.substr(semi + 1));
  return m;
}

void validate(const ExperimentConfig& c) {
  if (c.threads == 0) fail("threads", "must be >= 1");
  if (c.out.empty()) fail("out", "must not be empty");
  if (!is_power_of_two(c.grid.n) || c.grid.n < 2) fail("grid.n", "must be a power of two >= 2");
  if (c.grid.stride == 0 || c.grid.n % c.grid.stride != 0) fail("grid.stride", "must divide grid.n");
  if (!is_power_of_two(c.verify.corpus.n) || c.verify.corpus.n < 2) fail("verify.n", "must be a power of two >= 2");
  if (c.verify.corpus.stride == 0 || c.verify.corpus.n % c.verify.corpus.stride != 0)
    fail("verify.stride", "must divide verify.n");
  for (double b : c.verify.corpus.betas)
    if (!(b > 0.0)) fail("verify.betas", "entries must be > 0");
  for (double s : c.verify.suite.lieb_s)
    if (!(s > 2.0)) fail("verify.s", "Lieb exponents must be > 2");
  for (double s : c.verify.suite.lieb_up_s)
    if (!(s > 2.0)) fail("verify.lieb_up_s", "exponents must be > 2");
  for (double e : c.verify.suite.eps)
    if (!(e >= 0.0 && e < 1.0)) fail("verify.eps", "entries must lie in [0, 1)");
  if (!(c.verify.suite.ds_eps >= 0.0 && c.verify.suite.ds_eps < 1.0)) fail("verify.ds_eps", "must lie in [0, 1)");
  for (double a : c.verify.suite.pitt_alpha)
    if (!(a >= 0.0 && a <= 2.0)) fail("verify.alpha", "entries must lie in [0, 2]");
  for (const auto& name : c.verify.checks) {
    const auto& known = suite_check_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) fail("verify.checks", "unknown check '" + name + "'");
  }
  if (c.transform.source == SignalSource::File && c.transform.input.empty())
    fail("transform.input", "required when the signal comes from a file");
  const auto& r = c.recover;
  if (!is_power_of_two(r.n) || r.n < 2) fail("recover.n", "must be a power of two >= 2");
  if (!(r.tau >= 0.0)) fail("recover.tau", "must be >= 0");
  if (!(r.noise >= 0.0)) fail("recover.noise", "must be >= 0");
  if (r.q_block == 0 || r.q_block > r.n) fail("recover.q_block", "must lie in [1, recover.n]");
  if (r.max_iter == 0) fail("recover.max_iter", "must be >= 1");
}

}  // namespace qwlct::cli
