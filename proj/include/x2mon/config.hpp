// Copyright 2026 The x2mon-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "x2mon/circuit.hpp"
#include "x2mon/protocol.hpp"

/// Run configuration: a JSON document whose keys carry their units.
///
/// Frequencies and energies are entered as "GHz" and mean Grad/s
/// (1e9 rad/s); rates as "kHz" mean 1e3 rad/s. Unknown keys are rejected.
namespace x2mon {

enum class OutputFormat { kCsv, kJson };

struct DriveConfig {
  double phi_b_static = 0.0;
  double phi_b0 = 0.0;
  std::optional<double> omega_bar;  ///< empty = auto
};

struct ScheduleConfig {
  std::optional<double> swap_in;  ///< empty = pi / (2 |g_sw|)
  double hold = 0.0;
  std::optional<double> swap_out;
  ModelKind model_kind = ModelKind::kRwaEffective;
  bool retain_g2_in_hold = true;
};

struct RunConfig {
  CircuitParams circuit;
  std::vector<std::string> warnings;
  std::optional<DriveConfig> drive;
  std::optional<ScheduleConfig> schedule;
  NumericOptions numeric;
  bool check_convergence = false;
  bool has_sweep = false;
  std::vector<double> phi_grid;
  double validate_tolerance = 0.05;
  double window_factor = 2.5;
  std::filesystem::path output_path = "out";
  OutputFormat format = OutputFormat::kCsv;

  /// Protocol schedule from the drive and schedule blocks; throws ConfigError
  /// if either is missing.
  ProtocolSchedule protocol_schedule() const;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration (derived xi, x_zpf, E_C filled in) in the
/// input schema; echoed into every output file.
nlohmann::json resolved_config(const RunConfig& config);

OutputFormat parse_output_format(const std::string& text);

}  // namespace x2mon
