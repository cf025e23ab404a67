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

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "x2mon/constants.hpp"
#include "x2mon/errors.hpp"

/// Lumped-element model of the shuttle transmon: displacement-dependent
/// Josephson and charging energies, zero-point fluctuations, and the
/// second-order coupling ledger between the qubit and the shuttle mode.
namespace x2mon {

/// Physical device parameters. Energies and rates in Grad/s, lengths in m,
/// mass in kg, capacitances in F, temperature in K.
struct CircuitParams {
  double e_j1 = 0.0;  ///< E_J1(0)
  double e_j2 = 0.0;  ///< E_J2(0)
  /// E_C(0); ignored when any capacitance is supplied.
  double e_c = 0.0;
  double c_j = 0.0;  ///< per-junction geometric capacitance at rest
  double c_b = 0.0;  ///< shunt
  double c_g = 0.0;  ///< gate
  double x0 = 0.0;   ///< equilibrium electrode gap
  double xi = 0.0;   ///< tunneling length
  double mass = 0.0;
  double omega_m0 = 0.0;  ///< bare mechanical frequency
  double x_zpf = 0.0;
  double n_g = 0.0;  ///< carried for completeness; the two-level model ignores it
  double gamma_m = 0.0;
  double gamma_q = 0.0;
  double temperature = 0.0;

  bool has_capacitances() const { return c_j + c_b + c_g > 0.0; }
  bool symmetric() const { return e_j1 == e_j2; }

  /// E_C(0), recomputed from the capacitances when they are given.
  double charging_energy_at_rest() const {
    if (!has_capacitances()) return e_c;
    const double e = constants::kElementaryCharge;
    return constants::joules_to_grad(e * e / (2.0 * (2.0 * c_j + c_b + c_g)));
  }

  /// C_J / C_Sigma at rest; zero without capacitances.
  double junction_capacitance_fraction() const {
    return has_capacitances() ? c_j / (2.0 * c_j + c_b + c_g) : 0.0;
  }
};

/// Throws std::invalid_argument on non-physical values; returns
/// human-readable warnings for soft violations (x_zpf < xi < x0).
std::vector<std::string> check_params(const CircuitParams& params);

/// Static flux bias plus a cosine modulation phi_b(t) = static + phi_b0 cos(omega_bar t).
struct FluxDrive {
  double phi_b_static = 0.0;
  double phi_b0 = 0.0;
  double omega_bar = 0.0;

  double phi_b(double t) const {
    return phi_b_static + phi_b0 * std::cos(omega_bar * t);
  }
  /// Throws DomainError unless |static| + |phi_b0| < pi.
  void validate() const;
};

/// Full second-order coefficient ledger at one flux bias (Grad/s).
struct CouplingSet {
  double phi_b = 0.0;
  double omega_p0 = 0.0;
  double g21 = 0.0, g22 = 0.0, g42 = 0.0;
  double g01 = 0.0, g02 = 0.0;
  double g10 = 0.0, g11 = 0.0, g12 = 0.0;
  double g30 = 0.0, g31 = 0.0, g32 = 0.0;
  /// Transition frequency omega_p0 - E_C; the Hamiltonian carries omega_q/2 sigma_z.
  double omega_q = 0.0;
  /// omega_m0 + 2 g02 + g22 + 6 g42.
  double omega_m = 0.0;
  double g1 = 0.0;  ///< g11 + 3 g31, multiplies (b + b^dag) sigma_x
  double g2 = 0.0;  ///< g22 + 12 g42, multiplies (b + b^dag)^2 sigma_z
  double drive_sz_linear = 0.0;  ///< g21
  double force_const = 0.0;      ///< g01
  double sx_offset = 0.0;        ///< g10 + 3 g30
  double sx_quadratic = 0.0;     ///< g12 + 3 g32
};

/// Tunneling length x0 / ln[Delta R_K / (8 E_J R_N0)] from the
/// Ambegaokar-Baratoff and Landauer relations. Energies in Grad/s, r_n0 in ohms.
double xi_from_tunneling(double x0, double delta_gap, double e_j, double r_n0);

/// Harmonic-oscillator zero-point amplitude sqrt(hbar / (2 m omega)), meters.
double x_zpf_from_mass(double mass, double omega_m);

/// (E_J1 e^{-delta/xi}, E_J2 e^{+delta/xi}).
template <typename Scalar = double>
std::pair<Scalar, Scalar> josephson_energy_pair(const CircuitParams& params,
                                                Scalar delta) {
  using std::exp;
  const Scalar u = delta / Scalar(params.xi);
  return {Scalar(params.e_j1) * exp(-u), Scalar(params.e_j2) * exp(u)};
}

/// E_C(delta) with parallel-plate junction capacitances C_J / (1 +- delta/x0).
/// Constant E_C when no capacitances are configured.
template <typename Scalar = double>
Scalar charging_energy(const CircuitParams& params, Scalar delta) {
  using std::abs;
  if (abs(delta) >= Scalar(params.x0)) {
    throw DomainError("shuttle contacts electrode");
  }
  if (!params.has_capacitances()) return Scalar(params.e_c);
  const Scalar u = delta / Scalar(params.x0);
  const Scalar c_j = Scalar(params.c_j);
  const Scalar c_sigma = c_j / (Scalar(1) + u) + c_j / (Scalar(1) - u) +
                         Scalar(params.c_b) + Scalar(params.c_g);
  const Scalar e = Scalar(constants::kElementaryCharge);
  return e * e / (Scalar(2) * c_sigma) / Scalar(constants::kHbar) /
         Scalar(constants::kGigaRadPerSecond);
}

struct ZeroPointFluctuations {
  double n_zpf = 0.0;
  double phi_zpf = 0.0;
};

/// Charge and phase zero-point fluctuations of the transmon mode.
ZeroPointFluctuations qubit_zpf(double e_c, double e_j_sum, double phi_b);

/// Evaluates the full ledger at flux bias phi_b.
///
/// Each entry is the exact second-order Taylor coefficient of the
/// corresponding displacement-dependent prefactor, with delta = x_zpf (b + b^dag).
/// For d0 = 0 and C_J = 0 these reduce to the closed forms usually quoted;
/// otherwise g22 picks up -d0^2/8 (x_zpf/xi)^2 omega_p0 and the C_J terms
/// scale with (x_zpf/x0)^2.
CouplingSet coupling_set(const CircuitParams& params, double phi_b);

/// (1/4)(x_zpf/xi)^2 omega_p0: the g22 closed form without the asymmetry and
/// capacitance corrections.
double literal_g22(const CircuitParams& params, double phi_b);

/// Symmetric-junction closed form
///   2 E_J (x_zpf/xi) tan(phi/2) [-(E_C/E_J)^{1/4} cos^{3/4} + (E_C/E_J)^{3/4} cos^{1/4}].
/// Differs from g11 + 3 g31 in the weight of the second bracket term; kept
/// for comparison only.
double symmetric_g1_closed_form(const CircuitParams& params, double phi_b);

/// Exact (lab-frame) coefficients at phi_b(t).
CouplingSet modulated_coefficients(const CircuitParams& params,
                                   const FluxDrive& drive, double t);

/// Second-order-in-phi_b0 drive parameters for symmetric junctions.
struct DriveExpansion {
  double omega_q_bar = 0.0;  ///< omega_q(phi_b = 0) - delta_q
  double delta_q = 0.0;      ///< phi_b0^2 omega_p0 / 16
  double g1_bar = 0.0;       ///< linear-in-phi_b0 amplitude of g1(t)
};

DriveExpansion approx_drive_params(const CircuitParams& params, double phi_b0);

struct SweepRow {
  double phi_b = 0.0;
  std::optional<CouplingSet> couplings;
  std::string error;  ///< set iff couplings is empty
};

/// One row per grid point; domain errors are captured per row.
std::vector<SweepRow> flux_sweep(const CircuitParams& params,
                                 std::span<const double> phi_grid);

/// A flux bias in [lo, hi] where |g1| - |g2| changes sign, located by
/// bisection to `tolerance` rad. The bracket [lo, hi] must straddle the sign
/// change. Throws std::invalid_argument otherwise.
double find_coupling_crossover(const CircuitParams& params, double lo,
                               double hi, double tolerance = 1e-9);

/// Reference device: E_J = 20, E_C = 1 Grad/s, x0 = 1 nm, xi from NbN tunneling
/// numbers, x_zpf / xi = 3e-3, m = 5e-19 kg, omega_m0 = 1 Grad/s,
/// gamma = 1 krad/s, gamma_sigma = 100 krad/s, 10 mK.
CircuitParams reference_device();

}  // namespace x2mon
