#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwlct/io.hpp"
#include "qwlct/recovery.hpp"
#include "qwlct/suite.hpp"

namespace qwlct::cli {

enum class TransformKind { Qft, Qlct, Qwlct };
enum class WindowKind { Paper, Gaussian };
enum class SignalSource { File, Paper, Impulse };

struct GridSpec {
  std::size_t n = 64;
  double half_width = 2.0;
  std::size_t stride = 4;
};

struct TransformSection {
  TransformKind kind = TransformKind::Qwlct;
  SignalSource source = SignalSource::Paper;
  std::string input;
  std::string output;  // file name inside the output directory
  WindowKind window = WindowKind::Paper;
  double sigma = 0.5;
};

struct SpectrogramSection {
  SliceKind slice = SliceKind::FixedShift;
  std::optional<std::pair<std::size_t, std::size_t>> index;  // defaults to the central bin
};

struct VerifySection {
  std::vector<std::string> checks;  // empty with all=false means "all"
  bool all = false;
  CorpusOptions corpus;
  SuiteOptions suite;
};

struct ExperimentConfig {
  std::uint64_t seed = 42;
  unsigned threads = 1;
  std::string out = "qwlct_out";
  double beta = 1.0 / 16.0;
  double u0 = 0.0;
  double v0 = 0.0;
  std::vector<MatrixSet> matrices;  // empty selects each command's default
  GridSpec grid;
  TransformSection transform;
  SpectrogramSection spectrogram;
  VerifySection verify;
  RecoveryConfig recover;
};

/// Parses and validates a JSON config document. Unknown or ill-typed keys
/// raise Config errors naming the dotted key path.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// "a,b,c,d" or "a,b,c,d;a,b,c,d" (A1;A2). A single matrix is used on both axes.
MatrixSet parse_matrix_flag(const std::string& text);

/// Comma-separated real list.
std::vector<double> parse_list(const std::string& text, const char* key);

/// Final consistency checks before any computation.
void validate(const ExperimentConfig& c);

}  // namespace qwlct::cli
