#pragma once

#include <iosfwd>

#include "cli/config.hpp"

namespace qwlct::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;

int cmd_transform(const ExperimentConfig& c, std::ostream& out);
int cmd_spectrogram(const ExperimentConfig& c, std::ostream& out);
int cmd_verify(const ExperimentConfig& c, std::ostream& out);
int cmd_paper_example(const ExperimentConfig& c, std::ostream& out);
int cmd_recover(const ExperimentConfig& c, std::ostream& out);
int cmd_selftest(const ExperimentConfig& c, std::ostream& out);

/// Full command-line entry point; never throws.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qwlct::cli
