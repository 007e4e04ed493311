#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qwlct/error.hpp"
#include "qwlct/field.hpp"
#include "qwlct/report.hpp"
#include "qwlct/signal.hpp"

namespace qwlct {

inline constexpr std::uint32_t kFormatVersion = 1;

namespace detail {

class ByteWriter {
 public:
  void raw(const char* s, std::size_t n) { buf_.append(s, n); }
  void u32(std::uint32_t v) {
    for (int b = 0; b < 4; ++b) buf_.push_back(static_cast<char>((v >> (8 * b)) & 0xFFu));
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) buf_.push_back(static_cast<char>((bits >> (8 * b)) & 0xFFu));
  }
  void quaternion(const Quaternion& q) {
    f64(q.q0);
    f64(q.q1);
    f64(q.q2);
    f64(q.q3);
  }
  const std::string& bytes() const { return buf_; }

 private:
  std::string buf_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string data) : data_(std::move(data)) {}
  void expect_magic(const char* magic) {
    need(4);
    if (std::memcmp(data_.data() + pos_, magic, 4) != 0)
      throw Error(ErrorKind::BadMagic, std::string("expected magic \"") + magic + "\"");
    pos_ += 4;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + b])) << (8 * b);
    pos_ += 4;
    return v;
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + b])) << (8 * b);
    pos_ += 8;
    return std::bit_cast<double>(v);
  }
  Quaternion quaternion() {
    Quaternion q;
    q.q0 = f64();
    q.q1 = f64();
    q.q2 = f64();
    q.q3 = f64();
    return q;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw Error(ErrorKind::Truncated, "file ends before the declared payload");
  }
  std::string data_;
  std::size_t pos_ = 0;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

inline void check_version(std::uint32_t v) {
  if (v != kFormatVersion) throw Error(ErrorKind::BadVersion, "unsupported format version " + std::to_string(v));
}

inline std::size_t checked_count(std::uint32_t v, const char* what) {
  if (v < 2) throw Error(ErrorKind::Parse, std::string(what) + " must be at least 2");
  return v;
}

inline Grid2D read_grid(ByteReader& r, std::size_t n1, std::size_t n2) {
  const double x1 = r.f64(), d1 = r.f64(), x2 = r.f64(), d2 = r.f64();
  try {
    return {n1, n2, x1, d1, x2, d2};
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

}  // namespace detail

inline std::string encode_qsig(const QSignal2D& f) {
  detail::ByteWriter w;
  const auto& g = f.grid();
  w.raw("QSIG", 4);
  w.u32(kFormatVersion);
  w.u32(static_cast<std::uint32_t>(g.n1));
  w.u32(static_cast<std::uint32_t>(g.n2));
  w.f64(g.x1_min);
  w.f64(g.dx1);
  w.f64(g.x2_min);
  w.f64(g.dx2);
  for (const auto& q : f.samples()) w.quaternion(q);
  return w.bytes();
}

inline QSignal2D decode_qsig(std::string bytes) {
  detail::ByteReader r(std::move(bytes));
  r.expect_magic("QSIG");
  detail::check_version(r.u32());
  const std::size_t n1 = detail::checked_count(r.u32(), "n1");
  const std::size_t n2 = detail::checked_count(r.u32(), "n2");
  const Grid2D g = detail::read_grid(r, n1, n2);
  if (r.remaining() / 32 < g.size()) throw Error(ErrorKind::Truncated, "QSIG payload shorter than n1*n2 samples");
  std::vector<Quaternion> s(g.size());
  for (auto& q : s) q = r.quaternion();
  return {g, std::move(s)};
}

inline void write_qsig(const QSignal2D& f, const std::filesystem::path& path) {
  detail::write_file(path, encode_qsig(f));
}
inline QSignal2D read_qsig(const std::filesystem::path& path) { return decode_qsig(detail::read_file(path)); }

inline std::string encode_qwf4(const QWLCTField& G) {
  detail::ByteWriter w;
  const auto& W = G.freq_grid();
  const auto& U = G.shift_grid();
  w.raw("QWF4", 4);
  w.u32(kFormatVersion);
  for (std::size_t n : {W.n1, W.n2, U.n1, U.n2}) w.u32(static_cast<std::uint32_t>(n));
  for (double v : {W.x1_min, W.dx1, W.x2_min, W.dx2, U.x1_min, U.dx1, U.x2_min, U.dx2}) w.f64(v);
  for (const auto& q : G.values()) w.quaternion(q);
  return w.bytes();
}

/// Decoded field payload. The file carries no spatial grid or matrices, so
/// only the lattices and values come back.
struct QWF4Contents {
  Grid2D freq;
  Grid2D shift;
  std::vector<Quaternion> values;

  double energy() const {
    return pairwise_sum(values.size(), [&](std::size_t i) { return norm_sq(values[i]); }) * freq.cell_area() *
           shift.cell_area();
  }
};

inline QWF4Contents decode_qwf4(std::string bytes) {
  detail::ByteReader r(std::move(bytes));
  r.expect_magic("QWF4");
  detail::check_version(r.u32());
  const std::size_t w1 = detail::checked_count(r.u32(), "n_w1"), w2 = detail::checked_count(r.u32(), "n_w2");
  const std::size_t u1 = r.u32(), u2 = r.u32();
  if (u1 == 0 || u2 == 0) throw Error(ErrorKind::Parse, "shift grid must be non-empty");
  QWF4Contents c;
  c.freq = detail::read_grid(r, w1, w2);
  const double a = r.f64(), b = r.f64(), d = r.f64(), e = r.f64();
  c.shift = Grid2D(u1, u2, a, b, d, e);
  const std::size_t count = c.freq.size() * c.shift.size();
  if (r.remaining() / 32 < count) throw Error(ErrorKind::Truncated, "QWF4 payload shorter than declared");
  c.values.resize(count);
  for (auto& q : c.values) {
    q = r.quaternion();
    if (!is_finite(q)) throw Error(ErrorKind::NonFinite, "QWF4 contains NaN or Inf");
  }
  return c;
}

inline void write_qwf4(const QWLCTField& G, const std::filesystem::path& path) {
  detail::write_file(path, encode_qwf4(G));
}
inline QWF4Contents read_qwf4(const std::filesystem::path& path) { return decode_qwf4(detail::read_file(path)); }

inline std::string encode_csv(const QSignal2D& f) {
  std::string out = "x1,x2,q0,q1,q2,q3\n";
  const auto& g = f.grid();
  for (std::size_t a = 0; a < g.n1; ++a)
    for (std::size_t b = 0; b < g.n2; ++b) {
      const auto& q = f.at(a, b);
      out += format_g17(g.x1(a)) + ',' + format_g17(g.x2(b)) + ',' + format_g17(q.q0) + ',' + format_g17(q.q1) + ',' +
             format_g17(q.q2) + ',' + format_g17(q.q3) + '\n';
    }
  return out;
}

// The grid is recovered from the coordinate columns: rows are axis-1 major,
// so n2 is the length of the first run of equal x1 values.
inline QSignal2D decode_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, "empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x1,x2,q0,q1,q2,q3") throw Error(ErrorKind::Parse, "CSV header must be x1,x2,q0,q1,q2,q3");
  std::vector<std::array<double, 6>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 6> v{};
    std::size_t pos = 0;
    for (int c = 0; c < 6; ++c) {
      const std::size_t end = line.find(',', pos);
      const std::string cell = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      std::size_t used = 0;
      try {
        v[c] = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cell.size())
        throw Error(ErrorKind::Parse, "bad number on CSV line " + std::to_string(lineno));
      if (!std::isfinite(v[c]))
        throw Error(ErrorKind::NonFinite, "NaN or Inf on CSV line " + std::to_string(lineno));
      if ((end == std::string::npos) != (c == 5))
        throw Error(ErrorKind::Parse, "CSV line " + std::to_string(lineno) + " must have 6 columns");
      pos = end + 1;
    }
    rows.push_back(v);
  }
  if (rows.size() < 4) throw Error(ErrorKind::Parse, "CSV needs at least a 2x2 grid");
  std::size_t n2 = 1;
  while (n2 < rows.size() && rows[n2][0] == rows[0][0]) ++n2;
  if (n2 < 2 || rows.size() % n2 != 0) throw Error(ErrorKind::Parse, "CSV rows do not form a rectangular grid");
  const std::size_t n1 = rows.size() / n2;
  const double dx1 = (rows[(n1 - 1) * n2][0] - rows[0][0]) / static_cast<double>(n1 - 1);
  const double dx2 = (rows[n2 - 1][1] - rows[0][1]) / static_cast<double>(n2 - 1);
  Grid2D g;
  try {
    g = Grid2D(n1, n2, rows[0][0], dx1, rows[0][1], dx2);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  std::vector<Quaternion> s(rows.size());
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b) {
      const auto& v = rows[a * n2 + b];
      const double tol1 = 1e-9 * std::fabs(dx1), tol2 = 1e-9 * std::fabs(dx2);
      if (std::fabs(v[0] - g.x1(a)) > tol1 + 1e-12 * std::fabs(v[0]) ||
          std::fabs(v[1] - g.x2(b)) > tol2 + 1e-12 * std::fabs(v[1]))
        throw Error(ErrorKind::Parse, "CSV coordinates are not a uniform axis-1 major grid");
      s[a * n2 + b] = Quaternion(v[2], v[3], v[4], v[5]);
    }
  return {g, std::move(s)};
}

inline void write_csv(const QSignal2D& f, const std::filesystem::path& path) {
  detail::write_file(path, encode_csv(f));
}
inline QSignal2D read_csv(const std::filesystem::path& path) { return decode_csv(detail::read_file(path)); }

/// Reads a signal, choosing the format from the extension (.csv or QSIG).
inline QSignal2D read_signal(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? read_csv(path) : read_qsig(path);
}

enum class SliceKind { FixedShift, FixedFrequency };

/// |G|^2 over w for a fixed shift index, or over u for a fixed frequency index.
inline std::string spectrogram_csv(const QWLCTField& G, SliceKind kind, std::size_t i1, std::size_t i2) {
  const Grid2D& W = G.freq_grid();
  const Grid2D& U = G.shift_grid();
  std::string out;
  if (kind == SliceKind::FixedShift) {
    if (i1 >= U.n1 || i2 >= U.n2) throw Error(ErrorKind::InvalidArgument, "shift index out of range");
    out = "w1,w2,power\n";
    for (std::size_t a = 0; a < W.n1; ++a)
      for (std::size_t b = 0; b < W.n2; ++b)
        out += format_g17(W.x1(a)) + ',' + format_g17(W.x2(b)) + ',' + format_g17(norm_sq(G.at(i1, i2, a, b))) + '\n';
  } else {
    if (i1 >= W.n1 || i2 >= W.n2) throw Error(ErrorKind::InvalidArgument, "frequency index out of range");
    out = "u1,u2,power\n";
    for (std::size_t a = 0; a < U.n1; ++a)
      for (std::size_t b = 0; b < U.n2; ++b)
        out += format_g17(U.x1(a)) + ',' + format_g17(U.x2(b)) + ',' + format_g17(norm_sq(G.at(a, b, i1, i2))) + '\n';
  }
  return out;
}

}  // namespace qwlct
