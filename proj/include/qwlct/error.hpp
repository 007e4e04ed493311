#pragma once

#include <stdexcept>
#include <string>

namespace qwlct {

enum class ErrorKind {
  InvalidArgument,
  GridMismatch,
  NonFinite,
  NotLatticeAligned,
  DegenerateParams,
  BadMagic,
  BadVersion,
  Truncated,
  Io,
  Parse,
  Config,
  Unstable,
  Diverged,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::GridMismatch: return "grid mismatch";
    case ErrorKind::NonFinite: return "non-finite value";
    case ErrorKind::NotLatticeAligned: return "not lattice aligned";
    case ErrorKind::DegenerateParams: return "degenerate parameters";
    case ErrorKind::BadMagic: return "bad magic";
    case ErrorKind::BadVersion: return "bad version";
    case ErrorKind::Truncated: return "truncated payload";
    case ErrorKind::Io: return "io error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Unstable: return "unstable configuration";
    case ErrorKind::Diverged: return "diverged";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qwlct
