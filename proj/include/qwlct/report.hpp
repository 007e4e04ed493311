#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace qwlct {

using json = nlohmann::json;

enum class Orientation { LhsAtMostRhs, LhsAtLeastRhs, Equal };
enum class CheckStatus { Asserted, Diagnostic, PreconditionUnmet, Vacuous };

inline const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::LhsAtMostRhs: return "lhs<=rhs";
    case Orientation::LhsAtLeastRhs: return "lhs>=rhs";
    case Orientation::Equal: return "lhs==rhs";
  }
  return "?";
}

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Asserted: return "asserted";
    case CheckStatus::Diagnostic: return "diagnostic";
    case CheckStatus::PreconditionUnmet: return "precondition unmet";
    case CheckStatus::Vacuous: return "vacuous";
  }
  return "?";
}

/// One evaluated comparison. margin >= -tolerance means satisfied; for
/// equalities the margin is tolerance - |lhs - rhs| and must be >= 0.
struct InequalityReport {
  std::string name;
  std::string case_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool satisfied = true;
  Orientation orientation = Orientation::LhsAtMostRhs;
  CheckStatus status = CheckStatus::Asserted;
  json params = json::object();
  std::vector<std::string> conventions;
  std::uint64_t seed = 0;

  bool failed() const { return status == CheckStatus::Asserted && !satisfied; }
};

inline constexpr double kInequalityRelTol = 1e-6;

inline InequalityReport make_report(std::string name, double lhs, double rhs, Orientation orientation,
                                    double rel_tol = kInequalityRelTol) {
  InequalityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.orientation = orientation;
  switch (orientation) {
    case Orientation::LhsAtMostRhs:
      r.margin = rhs - lhs;
      r.tolerance = rel_tol * (std::fabs(lhs) + std::fabs(rhs));
      r.satisfied = r.margin >= -r.tolerance;
      break;
    case Orientation::LhsAtLeastRhs:
      r.margin = lhs - rhs;
      r.tolerance = rel_tol * (std::fabs(lhs) + std::fabs(rhs));
      r.satisfied = r.margin >= -r.tolerance;
      break;
    case Orientation::Equal:
      r.tolerance = rel_tol * std::fmax(std::fabs(lhs), std::fabs(rhs));
      r.margin = r.tolerance - std::fabs(lhs - rhs);
      r.satisfied = r.margin >= 0.0;
      break;
  }
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) r.satisfied = false;
  return r;
}

// Non-finite numbers have no JSON form; they are written as strings.
inline json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline json to_json(const InequalityReport& r) {
  json j;
  j["name"] = r.name;
  j["case"] = r.case_id;
  j["lhs"] = json_number(r.lhs);
  j["rhs"] = json_number(r.rhs);
  j["margin"] = json_number(r.margin);
  j["tolerance"] = json_number(r.tolerance);
  j["satisfied"] = r.satisfied;
  j["orientation"] = to_string(r.orientation);
  j["status"] = to_string(r.status);
  j["params"] = r.params;
  j["conventions"] = r.conventions;
  j["seed"] = r.seed;
  return j;
}

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string reports_csv(const std::vector<InequalityReport>& reports) {
  std::string out = "name,lhs,rhs,margin,satisfied\n";
  for (const auto& r : reports) {
    out += r.case_id.empty() ? r.name : r.name + ":" + r.case_id;
    out += ',' + format_g17(r.lhs) + ',' + format_g17(r.rhs) + ',' + format_g17(r.margin) + ',';
    out += r.satisfied ? "true\n" : "false\n";
  }
  return out;
}

inline json reports_json(const std::vector<InequalityReport>& reports) {
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

inline bool any_failed(const std::vector<InequalityReport>& reports) {
  for (const auto& r : reports)
    if (r.failed()) return true;
  return false;
}

}  // namespace qwlct
