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

#include <iosfwd>
#include <string>
#include <vector>

#include "x2mon/config.hpp"

/// Subcommands behind the x2mon executable. Each writes its files under
/// config.output_path and returns a process exit code.
namespace x2mon {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitDomain = 2,
  kExitIntegration = 3,
  kExitValidation = 4,
};

const char* version();

/// coefficients.{csv,json}: phi_b, g1, g2, omega_q, omega_m, omega_p0 per grid
/// point. Rows outside the domain become error entries and the exit code is 2.
int cmd_coefficients(const RunConfig& config, std::ostream& log);

/// One time-series file per phase (swap_in, hold, swap_out), the free-decay
/// baseline, and summary.{csv,json}.
int cmd_swap(const RunConfig& config, std::ostream& log);

/// Lab-frame vs RWA comparison; validate.{csv,json}. Exit 4 when either
/// relative deviation exceeds config.validate_tolerance.
int cmd_validate(const RunConfig& config, std::ostream& log);

/// Full command line: parses flags, loads the config, applies overrides,
/// dispatches, and maps exceptions onto exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& log);

}  // namespace x2mon
