#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qruler/scenarios.hpp"

namespace qruler::cli {

enum class Command { ValidateRuler, Wk, Fisher, Scenario, Optimize, Acceptance };
enum class OutputFormat { Csv, Json, Both };

std::string to_string(Command command);
Command command_from_string(std::string_view name);
std::string to_string(OutputFormat format);
OutputFormat format_from_string(std::string_view name);

/// Everything one invocation needs. Probe and ruler use the compact
/// "kind:key=value,..." syntax shared by flags and config files.
struct RunConfig {
  Command command = Command::Wk;
  std::string probe = "gaussian:sigma=1";
  std::string ruler = "ideal";
  std::size_t grid_points = 0;   ///< 0 picks a default
  double grid_half_width = 0.0;  ///< 0 picks a default
  std::size_t oversample = 2;
  std::string scenario = "linear";
  std::vector<double> lambdas{0.0};
  double lambda0 = 0.0;
  double step = 0.0;  ///< 0 uses the scenario's own step
  double hbar = 1.0;
  std::string objective = "linear";
  double budget = 8.0;
  std::size_t samples = 101;
  double x0 = 0.0;
  double p0 = 0.0;
  std::filesystem::path out_dir;
  OutputFormat format = OutputFormat::Both;

  /// Keys accepted in a config file (plus "command").
  static const std::vector<std::string>& keys();

  /// Overwrites fields present in `j`; unknown keys raise ConfigError.
  void merge(const nlohmann::json& j);

  /// Canonical form of the inputs; the output directory is left out.
  nlohmann::json to_json() const;
};

/// Output directory used when neither flag nor config names one.
std::filesystem::path default_out_dir();

struct RulerChoice {
  double width = 0.0;  ///< 0 = ideal
};

ProbeSpec parse_probe(std::string_view text);
RulerChoice parse_ruler(std::string_view text);

/// Scenario spec assembled from the config; joint outcomes follow the kind.
ScenarioSpec scenario_spec(const RunConfig& config);

}  // namespace qruler::cli
