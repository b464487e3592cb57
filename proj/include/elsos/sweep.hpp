#pragma once

// Report types shared by the angle sweeps, plus CSV/JSON emission.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "elsos/angle.hpp"
#include "elsos/parallel.hpp"

namespace elsos {

inline constexpr double kDefaultTolerance = 1e-9;

/// Shortest round-trip decimal form, so reports are byte-stable.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct SweepConfig {
  std::int64_t qmax = 60;
  double tol = kDefaultTolerance;
  std::vector<double> lambdas{1.0, 2.0, 4.0};
  std::optional<double> R;
  std::optional<double> kappa;
  std::optional<double> eps;
  std::optional<double> theta0;
  std::vector<double> deltas{0.1, 0.3, 0.5};
  unsigned jobs = default_jobs();

  void validate() const {
    if (qmax < 1) throw std::invalid_argument("qmax must be >= 1");
    if (!(tol >= 0)) throw std::invalid_argument("tol must be >= 0");
  }
};

struct SweepRow {
  RationalAngle angle;
  double margin = 0.0;
};

/// A named auxiliary check carried alongside the margin sweep.
struct SideCheck {
  std::string name;
  double value = 0.0;
  bool pass = true;
  std::string detail;
};

/// One scanned constant combination in a search.
struct ScanEntry {
  double theta0 = 0.0;
  double R = 0.0;
  double eps = 0.0;
  double min_margin = 0.0;
  RationalAngle argmin;
  bool pass = false;
};

struct SweepReport {
  std::string name;
  std::int64_t grid_order = 0;
  double tol = kDefaultTolerance;
  std::vector<SweepRow> rows;
  double min_margin = std::numeric_limits<double>::infinity();
  std::optional<RationalAngle> argmin;
  std::vector<SideCheck> checks;
  std::vector<ScanEntry> scan;
  nlohmann::ordered_json constants = nlohmann::ordered_json::object();
  std::vector<std::string> warnings;
  double wall_ms = 0.0;

  bool margin_pass() const { return min_margin >= -tol; }
  bool pass() const {
    if (!margin_pass()) return false;
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  /// Recomputes min_margin/argmin from rows (rows sorted by (q, p) first).
  void finalize() {
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) { return a.angle < b.angle; });
    min_margin = std::numeric_limits<double>::infinity();
    argmin.reset();
    for (const auto& r : rows)
      if (r.margin < min_margin) {
        min_margin = r.margin;
        argmin = r.angle;
      }
  }
};

inline void write_csv(std::ostream& os, const SweepReport& report) {
  os << "p,q,theta,margin\n";
  for (const auto& r : report.rows)
    os << r.angle.p() << ',' << r.angle.q() << ',' << format_double(r.angle.theta()) << ','
       << format_double(r.margin) << '\n';
}

inline nlohmann::ordered_json to_json(const SweepReport& report, bool with_timing = false) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["pass"] = report.pass();
  j["grid_order"] = report.grid_order;
  j["points"] = report.rows.size();
  j["tol"] = report.tol;
  j["min_margin"] = report.rows.empty() ? nlohmann::ordered_json(nullptr)
                                        : nlohmann::ordered_json(format_double(report.min_margin));
  j["argmin_theta"] = report.argmin ? nlohmann::ordered_json(report.argmin->str()) : nlohmann::ordered_json(nullptr);
  j["constants"] = report.constants;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"value", format_double(c.value)}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  if (!report.scan.empty()) {
    auto scan = nlohmann::ordered_json::array();
    for (const auto& s : report.scan)
      scan.push_back({{"theta0", format_double(s.theta0)},
                      {"R", format_double(s.R)},
                      {"eps", format_double(s.eps)},
                      {"min_margin", format_double(s.min_margin)},
                      {"argmin_theta", s.argmin.str()},
                      {"pass", s.pass}});
    j["scan"] = scan;
  }
  j["warnings"] = report.warnings;
  if (with_timing) j["runtime_ms"] = report.wall_ms;
  return j;
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace elsos
