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

#include <numbers>

/// Physical constants and unit conversions.
///
/// Energies, frequencies and rates are angular and expressed in Grad/s
/// (1e9 rad/s, hbar = 1). Times are in ns, so omega * t is in radians.
/// Lengths, masses and capacitances stay in SI.
namespace x2mon::constants {

// CODATA 2018 exact / recommended values.
inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;        // J / K

/// Resistance quantum 2 pi hbar / e^2, ohms.
inline constexpr double kResistanceQuantum =
    2.0 * std::numbers::pi * kHbar / (kElementaryCharge * kElementaryCharge);

/// One Grad/s expressed in rad/s.
inline constexpr double kGigaRadPerSecond = 1e9;

/// k_B / hbar in Grad/s per kelvin.
inline constexpr double kBoltzmannOverHbar =
    kBoltzmann / kHbar / kGigaRadPerSecond;

/// Converts an energy in joules to Grad/s.
constexpr double joules_to_grad(double energy) {
  return energy / kHbar / kGigaRadPerSecond;
}

/// Converts an energy in Grad/s to joules.
constexpr double grad_to_joules(double omega) {
  return omega * kHbar * kGigaRadPerSecond;
}

}  // namespace x2mon::constants
