#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rlab::harness {

inline constexpr int kReportSchemaVersion = 1;

enum class Status { kPass, kFail, kInconclusive, kInfo };

std::string_view to_string(Status status) noexcept;
Status parse_status(std::string_view name);

enum class Rule {
  kZScore,  // |statistic - target| <= tolerance * std_error
  kExact,   // |statistic - target| <= tolerance
  kTrend,   // statistic is 1 when the declared ordering holds
  kInfo,    // reported, never scored
};

std::string_view to_string(Rule rule) noexcept;
Rule parse_rule(std::string_view name);

struct Comparison {
  std::string name;
  std::string label;  // free-form qualifier (preset, density, ...)
  std::size_t n = 0;
  double t = 0.0;
  int k = 0;
  Rule rule = Rule::kZScore;
  double statistic = 0.0;
  double target = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  double tolerance = 0.0;
  Status status = Status::kInfo;
};

/// Scores a Monte Carlo comparison. Inconclusive when std_error exceeds
/// max_std_error.
Comparison z_comparison(std::string name, std::size_t n, double t, int k, double statistic, double target,
                        double std_error, double z_tolerance, double max_std_error);
/// Scores an exact identity by its absolute residual.
Comparison exact_comparison(std::string name, std::string label, std::size_t n, double residual, double tolerance);

struct Telemetry {
  std::uint64_t events = 0;
  std::uint64_t trajectories = 0;
  std::uint64_t conservation_violations = 0;
  bool recorded = false;  // false when the report was rebuilt from CSV
};

struct ComparisonReport {
  std::string experiment;
  nlohmann::json config;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<Comparison> comparisons;
  Telemetry telemetry;

  /// kFail if any comparison failed, else kInconclusive if any was
  /// inconclusive, else kPass.
  Status overall() const noexcept;
};

nlohmann::json to_json(const ComparisonReport& report);
/// Throws std::invalid_argument on a schema mismatch.
ComparisonReport report_from_json(const nlohmann::json& document);

/// "[PASS] <experiment> n=.. t=.. k=.. <name>: stat=.. target=.. se=.. z=.."
std::string summary_line(std::string_view experiment, const Comparison& comparison);

}  // namespace rlab::harness
