#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "imagunit/csv.hpp"

namespace imagunit::audit {

/// Discrepancy marks an as-printed variant that disagrees with a derived
/// companion which itself passes.
enum class Status { Pass, Fail, Discrepancy };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "discrepancy";
  }
}

struct Config {
  std::optional<double> tolerance;  // replaces every case tolerance
  int samples = 1000;
  unsigned threads = 1;
};

using Details = std::vector<std::pair<std::string, double>>;

struct CaseResult {
  std::string name;
  std::string relation;
  double max_residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::Fail;
  std::string note;
  Details details;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;  // sorted by name

  std::size_t count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [s](const CaseResult& c) { return c.status == s; }));
  }
  bool passed() const { return count(Status::Fail) == 0; }
};

namespace detail {
// JSON numbers for non-finite values become strings so the document stays valid.
inline nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return csv::number(v);
}
}  // namespace detail

inline nlohmann::ordered_json to_json(const CaseResult& c) {
  nlohmann::ordered_json j;
  j["name"] = c.name;
  j["equation_ref"] = c.relation;
  j["max_residual"] = detail::number(c.max_residual);
  j["tolerance"] = detail::number(c.tolerance);
  j["status"] = to_string(c.status);
  j["note"] = c.note;
  nlohmann::ordered_json d = nlohmann::ordered_json::object();
  for (const auto& [k, v] : c.details) d[k] = detail::number(v);
  j["details"] = std::move(d);
  return j;
}

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["seed"] = r.seed;
  j["summary"] = {{"total", r.cases.size()},
                  {"pass", r.count(Status::Pass)},
                  {"fail", r.count(Status::Fail)},
                  {"discrepancy", r.count(Status::Discrepancy)}};
  nlohmann::ordered_json cases = nlohmann::ordered_json::array();
  for (const auto& c : r.cases) cases.push_back(to_json(c));
  j["cases"] = std::move(cases);
  return j;
}

/// Fixed-width table, one line per case.
inline void print_table(std::ostream& os, const Report& r) {
  std::size_t width = 4;
  for (const auto& c : r.cases) width = std::max(width, c.name.size());
  char buf[128];
  os << std::string(width - 4, ' ') << "case  status       residual      tolerance\n";
  for (const auto& c : r.cases) {
    std::snprintf(buf, sizeof buf, "  %-11s  %13.6e  %13.6e", to_string(c.status), c.max_residual, c.tolerance);
    os << std::string(width - c.name.size(), ' ') << c.name << buf << '\n';
  }
  os << r.cases.size() << " cases: " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
     << r.count(Status::Discrepancy) << " discrepancy\n";
}

}  // namespace imagunit::audit
