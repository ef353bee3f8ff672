#include "rlab/harness/report.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace rlab::harness {

using nlohmann::json;

namespace {

constexpr std::array kStatusNames{std::pair{Status::kPass, "pass"}, std::pair{Status::kFail, "fail"},
                                  std::pair{Status::kInconclusive, "inconclusive"}, std::pair{Status::kInfo, "info"}};
constexpr std::array kRuleNames{std::pair{Rule::kZScore, "z"}, std::pair{Rule::kExact, "exact"},
                                std::pair{Rule::kTrend, "trend"}, std::pair{Rule::kInfo, "info"}};

// JSON has no infinities; they are written as null and read back as +inf.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double read_number(const json& v) { return v.is_null() ? std::numeric_limits<double>::infinity() : v.get<double>(); }

}  // namespace

std::string_view to_string(Status status) noexcept {
  for (const auto& [s, name] : kStatusNames) {
    if (s == status) return name;
  }
  return "unknown";
}

Status parse_status(std::string_view name) {
  for (const auto& [s, text] : kStatusNames) {
    if (name == text) return s;
  }
  throw std::invalid_argument("unknown status '" + std::string(name) + "'");
}

std::string_view to_string(Rule rule) noexcept {
  for (const auto& [r, name] : kRuleNames) {
    if (r == rule) return name;
  }
  return "unknown";
}

Rule parse_rule(std::string_view name) {
  for (const auto& [r, text] : kRuleNames) {
    if (name == text) return r;
  }
  throw std::invalid_argument("unknown rule '" + std::string(name) + "'");
}

Comparison z_comparison(std::string name, std::size_t n, double t, int k, double statistic, double target,
                        double std_error, double z_tolerance, double max_std_error) {
  Comparison c;
  c.name = std::move(name);
  c.n = n;
  c.t = t;
  c.k = k;
  c.rule = Rule::kZScore;
  c.statistic = statistic;
  c.target = target;
  c.std_error = std_error;
  c.tolerance = z_tolerance;
  const double diff = statistic - target;
  if (std_error > 0.0) {
    c.z = diff / std_error;
  } else {
    c.z = diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  if (!std::isfinite(statistic) || std::isnan(std_error)) {
    c.status = Status::kFail;
  } else if (std_error > max_std_error) {
    c.status = Status::kInconclusive;
  } else {
    c.status = std::abs(c.z) <= z_tolerance ? Status::kPass : Status::kFail;
  }
  return c;
}

Comparison exact_comparison(std::string name, std::string label, std::size_t n, double residual, double tolerance) {
  Comparison c;
  c.name = std::move(name);
  c.label = std::move(label);
  c.n = n;
  c.rule = Rule::kExact;
  c.statistic = residual;
  c.target = 0.0;
  c.tolerance = tolerance;
  c.status = residual <= tolerance ? Status::kPass : Status::kFail;
  return c;
}

Status ComparisonReport::overall() const noexcept {
  bool inconclusive = false;
  for (const auto& c : comparisons) {
    if (c.status == Status::kFail) return Status::kFail;
    if (c.status == Status::kInconclusive) inconclusive = true;
  }
  return inconclusive ? Status::kInconclusive : Status::kPass;
}

json to_json(const ComparisonReport& report) {
  json comparisons = json::array();
  std::array<std::size_t, 4> counts{};
  for (const auto& c : report.comparisons) {
    ++counts[static_cast<std::size_t>(c.status)];
    comparisons.push_back({{"name", c.name},
                           {"label", c.label},
                           {"n", c.n},
                           {"t", c.t},
                           {"k", c.k},
                           {"rule", to_string(c.rule)},
                           {"statistic", number(c.statistic)},
                           {"target", number(c.target)},
                           {"std_error", number(c.std_error)},
                           {"z", number(c.z)},
                           {"tolerance", number(c.tolerance)},
                           {"status", to_string(c.status)}});
  }
  json out{{"schema_version", kReportSchemaVersion},
           {"experiment", report.experiment},
           {"status", to_string(report.overall())},
           {"summary",
            {{"pass", counts[0]}, {"fail", counts[1]}, {"inconclusive", counts[2]}, {"info", counts[3]}}},
           {"config", report.config},
           {"metadata", report.metadata},
           {"comparisons", comparisons}};
  if (report.telemetry.recorded) {
    out["telemetry"] = {{"events", report.telemetry.events},
                        {"trajectories", report.telemetry.trajectories},
                        {"conservation_violations", report.telemetry.conservation_violations}};
  } else {
    out["telemetry"] = nullptr;
  }
  return out;
}

ComparisonReport report_from_json(const json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw std::invalid_argument("unsupported report schema_version");
    }
    ComparisonReport report;
    report.experiment = doc.at("experiment").get<std::string>();
    report.config = doc.at("config");
    report.metadata = doc.at("metadata");
    for (const auto& item : doc.at("comparisons")) {
      Comparison c;
      c.name = item.at("name").get<std::string>();
      c.label = item.at("label").get<std::string>();
      c.n = item.at("n").get<std::size_t>();
      c.t = item.at("t").get<double>();
      c.k = item.at("k").get<int>();
      c.rule = parse_rule(item.at("rule").get<std::string>());
      c.statistic = read_number(item.at("statistic"));
      c.target = read_number(item.at("target"));
      c.std_error = read_number(item.at("std_error"));
      c.z = read_number(item.at("z"));
      c.tolerance = read_number(item.at("tolerance"));
      c.status = parse_status(item.at("status").get<std::string>());
      report.comparisons.push_back(std::move(c));
    }
    const json& telemetry = doc.at("telemetry");
    if (!telemetry.is_null()) {
      report.telemetry.recorded = true;
      report.telemetry.events = telemetry.at("events").get<std::uint64_t>();
      report.telemetry.trajectories = telemetry.at("trajectories").get<std::uint64_t>();
      report.telemetry.conservation_violations = telemetry.at("conservation_violations").get<std::uint64_t>();
    }
    return report;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

std::string summary_line(std::string_view experiment, const Comparison& c) {
  std::string status(to_string(c.status));
  for (auto& ch : status) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  std::string where = fmt::format("n={}", c.n);
  if (c.rule == Rule::kZScore) where += fmt::format(" t={} k={}", c.t, c.k);
  std::string name = c.label.empty() ? c.name : c.name + " [" + c.label + "]";
  switch (c.rule) {
    case Rule::kZScore:
      return fmt::format("[{}] {} {} {}: stat={:.6g} target={:.6g} se={:.3g} z={:.2f}", status, experiment, where, name,
                         c.statistic, c.target, c.std_error, c.z);
    case Rule::kExact:
      return fmt::format("[{}] {} {} {}: residual={:.3g} (tol {:.1g})", status, experiment, where, name, c.statistic,
                         c.tolerance);
    case Rule::kTrend:
      return fmt::format("[{}] {} {}: holds={}", status, experiment, name, c.statistic == 1.0 ? "yes" : "no");
    case Rule::kInfo:
      break;
  }
  return fmt::format("[{}] {} {} {}: value={:.6g} se={:.3g}", status, experiment, where, name, c.statistic,
                     c.std_error);
}

}  // namespace rlab::harness
