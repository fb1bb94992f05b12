#pragma once

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qube/errors.hpp"

namespace qube {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

// Name of the environment variable that overrides the default tolerance of
// every check (flags take precedence over it).
inline constexpr const char* kToleranceEnvVar = "QUBE_TOLERANCE";

// Default tolerances, one per check family.  Each report record carries the
// tolerance actually used, so emitted reports are self-describing.
struct Tolerances {
  double ppt = 1e-10;             // slack below zero still counted as PPT
  double npt = 1e-6;              // how far below zero certifies entanglement
  double reconstruction = 1e-12;  // ensemble rebuild error
  double expansion = 1e-12;       // mixture-equality error
  double invariance = 1e-12;      // permutation-invariance error
  double qudit_invariance = 1e-10;
  double fidelity = 1e-9;         // |certified fidelity - 1|
  double probability = 1e-10;     // branch-probability deviation
  double equivalence = 1e-10;
  double hygiene = 1e-10;         // state-type invariants
  double roundtrip = 1e-12;       // involution / round-trip error
};

// Resolution order: built-in defaults, then the environment variable (if
// set, it replaces every default), then any explicit override.
inline Tolerances resolve_tolerances(
    std::optional<double> override_all = std::nullopt) {
  Tolerances tol;
  const char* env = std::getenv(kToleranceEnvVar);
  std::optional<double> all = override_all;
  if (!all && env && *env) {
    try {
      all = std::stod(env);
    } catch (const std::exception&) {
      throw argument_error(std::string("tolerance: cannot parse ") +
                           kToleranceEnvVar + "='" + env + "'");
    }
  }
  if (all) {
    if (*all <= 0.0) throw argument_error("tolerance: must be positive");
    tol = Tolerances{*all, *all, *all, *all, *all, *all,
                     *all, *all, *all, *all, *all};
  }
  return tol;
}

// One verified claim: what was checked, how its verdict was reached
// ("construction", "spectrum", "algebraic", "enumeration", "simulation" or
// "property"), the computed values, and the tolerance in force.
struct CheckRecord {
  std::string name;
  std::string source;
  std::vector<std::pair<std::string, double>> values;
  bool pass = false;
  double tolerance = 0.0;
};

struct ReportDocument {
  std::string artifact_version = kArtifactVersion;
  int schema_version = kReportSchemaVersion;
  std::string command;
  std::vector<CheckRecord> records;

  bool verdict_pass() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return true;
  }
};

namespace detail {

// Shortest decimal string that round-trips the double exactly.
inline std::string roundtrip_double(double v) {
  for (int precision = 1; precision <= 17; ++precision) {
    std::ostringstream out;
    out << std::setprecision(precision) << v;
    if (std::stod(out.str()) == v) return out.str();
  }
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace detail

inline std::string render_text(const ReportDocument& doc) {
  std::ostringstream out;
  out << "report for '" << doc.command << "' (version " << doc.artifact_version
      << ")\n";
  std::size_t name_width = 4;
  for (const auto& r : doc.records) name_width = std::max(name_width, r.name.size());
  for (const auto& r : doc.records) {
    out << (r.pass ? "  [PASS] " : "  [FAIL] ") << std::left
        << std::setw(static_cast<int>(name_width)) << r.name << std::right
        << "  source=" << r.source
        << "  tolerance=" << detail::roundtrip_double(r.tolerance);
    for (const auto& [key, value] : r.values)
      out << "  " << key << "=" << detail::roundtrip_double(value);
    out << "\n";
  }
  out << "verdict: " << (doc.verdict_pass() ? "pass" : "fail") << " ("
      << doc.records.size() << " checks)\n";
  return out.str();
}

inline std::string render_json(const ReportDocument& doc) {
  nlohmann::ordered_json j;
  j["artifact_version"] = doc.artifact_version;
  j["schema_version"] = doc.schema_version;
  j["command"] = doc.command;
  j["records"] = nlohmann::ordered_json::array();
  for (const auto& r : doc.records) {
    nlohmann::ordered_json rec;
    rec["name"] = r.name;
    rec["source"] = r.source;
    rec["values"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : r.values) rec["values"][key] = value;
    rec["pass"] = r.pass;
    rec["tolerance"] = r.tolerance;
    j["records"].push_back(std::move(rec));
  }
  j["verdict"] = doc.verdict_pass() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

}  // namespace qube
