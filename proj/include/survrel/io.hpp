#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "survrel/analysis.hpp"
#include "survrel/network.hpp"

namespace survrel {

// Shortest round-trip decimal; infinity prints as "inf".
std::string format_number(double value);

// Budget from text: a positive number, "inf" or "infinity".
std::optional<double> parse_budget(std::string_view text);

// Network file:
//   { "nodes":   [{"label"}],
//     "edges":   [{"from", "to", "quality", "monitor_bits", "sensor_failure_prob",
//                  "access_failure_prob", "access_failure_mode", "pair"?, "sensors"?}],
//     "demand":  [{"from", "to", "weight"}]?,  "default_weight"?,
//     "budgets": {"default", "overrides": [{"from", "to", "budget"}]}? }
// Missing edge attributes take quality=1, bits=0, probabilities=0, failclosed.
// Throws Error(parse_error | schema_error | <network validation code>).
AnalysisInput parse_network_file(std::string_view text);
std::string write_network_file(const AnalysisInput& input);

inline constexpr std::string_view report_schema = "surveillance-report/1";

std::string report_to_json(const ReliabilityReport& report);
// Throws Error(parse_error | schema_error).
ReliabilityReport report_from_json(std::string_view text);

// "rho,ud_mean,ud_stderr" rows.
std::string report_to_csv(const ReliabilityReport& report);
// "budget,alpha" rows.
std::string sweep_to_csv(const std::vector<SweepPoint>& sweep);
std::string sweep_to_json(const std::vector<SweepPoint>& sweep, const AnalysisConfig& config);
// "edge,budget,alpha_base,alpha_without,delta_alpha" rows.
std::string criticality_to_csv(const std::vector<EdgeCriticality>& rows);
std::string criticality_to_json(const std::vector<EdgeCriticality>& rows, const AnalysisConfig& config);

// 1-based line and column of the value at a JSON pointer inside `text`.
struct TextPosition {
  std::size_t line = 1;
  std::size_t column = 1;
};
TextPosition position_of_offset(std::string_view text, std::size_t offset);
std::optional<TextPosition> locate_json_pointer(std::string_view text, std::string_view pointer);

}  // namespace survrel
