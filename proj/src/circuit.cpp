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

#include "x2mon/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace x2mon {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be positive");
  }
}

void require_non_negative(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be non-negative");
  }
}

}  // namespace

std::vector<std::string> check_params(const CircuitParams& p) {
  require_positive(p.e_j1, "e_j1");
  require_positive(p.e_j2, "e_j2");
  if (!p.has_capacitances()) require_positive(p.e_c, "e_c");
  require_non_negative(p.c_j, "c_j");
  require_non_negative(p.c_b, "c_b");
  require_non_negative(p.c_g, "c_g");
  require_positive(p.x0, "x0");
  require_positive(p.xi, "xi");
  require_positive(p.mass, "mass");
  require_positive(p.omega_m0, "omega_m0");
  require_positive(p.x_zpf, "x_zpf");
  require_non_negative(p.gamma_m, "gamma_m");
  require_non_negative(p.gamma_q, "gamma_q");
  require_non_negative(p.temperature, "temperature");
  if (!std::isfinite(p.n_g)) throw std::invalid_argument("n_g must be finite");

  std::vector<std::string> warnings;
  if (!(p.x_zpf < p.xi)) {
    warnings.emplace_back("x_zpf >= xi: second-order expansion in x_zpf/xi is not controlled");
  }
  if (!(p.xi < p.x0)) {
    warnings.emplace_back("xi >= x0: tunneling length exceeds the electrode gap");
  }
  return warnings;
}

void FluxDrive::validate() const {
  if (!(std::abs(phi_b_static) + std::abs(phi_b0) < std::numbers::pi)) {
    throw DomainError("flux drive reaches |phi_b| >= pi");
  }
  if (phi_b0 != 0.0 && !(omega_bar > 0.0)) {
    throw std::invalid_argument("modulated drive needs omega_bar > 0");
  }
}

double xi_from_tunneling(double x0, double delta_gap, double e_j, double r_n0) {
  require_positive(x0, "x0");
  require_positive(delta_gap, "delta_gap");
  require_positive(e_j, "e_j");
  require_positive(r_n0, "r_n0");
  const double ratio =
      delta_gap * constants::kResistanceQuantum / (8.0 * e_j * r_n0);
  if (!(ratio > 1.0)) throw DomainError("junction transparency too high");
  return x0 / std::log(ratio);
}

double x_zpf_from_mass(double mass, double omega_m) {
  require_positive(mass, "mass");
  require_positive(omega_m, "omega_m");
  return std::sqrt(constants::kHbar /
                   (2.0 * mass * omega_m * constants::kGigaRadPerSecond));
}

ZeroPointFluctuations qubit_zpf(double e_c, double e_j_sum, double phi_b) {
  require_positive(e_c, "e_c");
  require_positive(e_j_sum, "e_j_sum");
  const double c = std::cos(phi_b / 2.0);
  // cos(pi/2) rounds to 6e-17, so test the wrapped bias as well
  const double wrapped = std::remainder(phi_b, 2.0 * std::numbers::pi);
  if (!(c > 0.0) || !(std::abs(wrapped) < std::numbers::pi)) {
    throw DomainError("flux bias at or beyond pi");
  }
  return {std::pow(e_j_sum * c / (32.0 * e_c), 0.25),
          std::pow(2.0 * e_c / (e_j_sum * c), 0.25)};
}

CouplingSet coupling_set(const CircuitParams& p, double phi_b) {
  const double e_c = p.charging_energy_at_rest();
  const double e1 = p.e_j1;
  const double e2 = p.e_j2;
  const double sum = e1 + e2;
  const double diff = e2 - e1;
  const double d0 = diff / sum;
  // Validates the flux bias.
  (void)qubit_zpf(e_c, sum, phi_b);

  const double c = std::cos(phi_b / 2.0);
  const double t = std::tan(phi_b / 2.0);
  const double rho = p.x_zpf / p.xi;
  const double eps = p.x_zpf / p.x0;
  const double kappa = p.junction_capacitance_fraction();
  const double ratio = 2.0 * e_c / sum;
  const double q14 = std::pow(ratio, 0.25);
  const double q34 = std::pow(ratio, 0.75);
  const double c34 = std::pow(c, 0.75);
  const double c14 = std::pow(c, 0.25);

  CouplingSet g;
  g.phi_b = phi_b;
  g.omega_p0 = std::sqrt(8.0 * e_c * sum * c);

  // omega_p(delta) (a^dag a + 1/2)
  g.g21 = 0.5 * d0 * rho * g.omega_p0;
  g.g22 = g.omega_p0 * (rho * rho * (0.25 - d0 * d0 / 8.0) - kappa * eps * eps);

  // -E_C(delta)/12 (a^dag + a)^4
  g.g42 = e_c * kappa * eps * eps / 6.0;

  // -(E_J1 + E_J2)(delta) cos(phi_b/2)
  g.g01 = -diff * c * rho;
  g.g02 = -0.5 * sum * c * rho * rho;

  // coefficient of (a^dag + a)
  g.g10 = -diff * q14 * t * c34;
  g.g11 = -(3.0 * e1 + e2) * (e1 + 3.0 * e2) / (4.0 * sum) * q14 * t * c34 * rho;
  g.g12 = -diff / (32.0 * sum * sum) *
              (9.0 * e1 * e1 - 2.0 * e1 * e2 + 9.0 * e2 * e2) * q14 * t * c34 *
              rho * rho -
          0.5 * kappa * eps * eps * g.g10;

  // coefficient of (a^dag + a)^3
  g.g30 = diff / 6.0 * q34 * t * c14;
  g.g31 = (e1 * e1 + 14.0 * e1 * e2 + e2 * e2) / (24.0 * sum) * q34 * t * c14 * rho;
  g.g32 = diff / (192.0 * sum * sum) *
              (e1 * e1 - 82.0 * e1 * e2 + e2 * e2) * q34 * t * c14 * rho * rho -
          1.5 * kappa * eps * eps * g.g30;

  g.omega_q = g.omega_p0 - e_c;
  g.omega_m = p.omega_m0 + (2.0 * g.g02 + g.g22 + 6.0 * g.g42);
  g.g1 = g.g11 + 3.0 * g.g31;
  g.g2 = g.g22 + 12.0 * g.g42;
  g.drive_sz_linear = g.g21;
  g.force_const = g.g01;
  g.sx_offset = g.g10 + 3.0 * g.g30;
  g.sx_quadratic = g.g12 + 3.0 * g.g32;
  return g;
}

double literal_g22(const CircuitParams& p, double phi_b) {
  const double rho = p.x_zpf / p.xi;
  return 0.25 * rho * rho * coupling_set(p, phi_b).omega_p0;
}

double symmetric_g1_closed_form(const CircuitParams& p, double phi_b) {
  if (!p.symmetric()) {
    throw UnsupportedConfiguration("symmetric g1 formula needs e_j1 == e_j2");
  }
  const double e_c = p.charging_energy_at_rest();
  (void)qubit_zpf(e_c, 2.0 * p.e_j1, phi_b);
  const double r = e_c / p.e_j1;
  const double c = std::cos(phi_b / 2.0);
  return 2.0 * p.e_j1 * (p.x_zpf / p.xi) * std::tan(phi_b / 2.0) *
         (-std::pow(r, 0.25) * std::pow(c, 0.75) +
          std::pow(r, 0.75) * std::pow(c, 0.25));
}

CouplingSet modulated_coefficients(const CircuitParams& params,
                                   const FluxDrive& drive, double t) {
  const double phi = drive.phi_b(t);
  if (!(std::abs(phi) < std::numbers::pi)) {
    std::ostringstream msg;
    msg << "instantaneous flux bias " << phi << " at t=" << t << " ns reaches pi";
    throw DomainError(msg.str());
  }
  return coupling_set(params, phi);
}

DriveExpansion approx_drive_params(const CircuitParams& params, double phi_b0) {
  if (!params.symmetric()) {
    throw UnsupportedConfiguration(
        "drive expansion is derived for symmetric junctions only");
  }
  const CouplingSet rest = coupling_set(params, 0.0);
  const double e_c = params.charging_energy_at_rest();
  const double e_j = params.e_j1;
  const double r = e_c / e_j;

  DriveExpansion out;
  out.delta_q = phi_b0 * phi_b0 * rest.omega_p0 / 16.0;
  out.omega_q_bar = rest.omega_q - out.delta_q;
  out.g1_bar = e_j * std::pow(r, 0.25) * (std::sqrt(r) - 1.0) *
               (params.x_zpf / params.xi) * phi_b0;
  return out;
}

std::vector<SweepRow> flux_sweep(const CircuitParams& params,
                                 std::span<const double> phi_grid) {
  std::vector<SweepRow> rows;
  rows.reserve(phi_grid.size());
  for (double phi : phi_grid) {
    SweepRow row;
    row.phi_b = phi;
    try {
      row.couplings = coupling_set(params, phi);
    } catch (const DomainError& e) {
      std::ostringstream msg;
      msg << "phi_b=" << phi << ": " << e.what();
      row.error = msg.str();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double find_coupling_crossover(const CircuitParams& params, double lo,
                               double hi, double tolerance) {
  auto gap = [&](double phi) {
    const CouplingSet g = coupling_set(params, phi);
    return std::abs(g.g1) - std::abs(g.g2);
  };
  double f_lo = gap(lo);
  const double f_hi = gap(hi);
  if (!(f_lo * f_hi < 0.0)) {
    throw std::invalid_argument("crossover bracket does not straddle a sign change");
  }
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = gap(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CircuitParams reference_device() {
  CircuitParams p;
  p.e_j1 = 20.0;
  p.e_j2 = 20.0;
  p.e_c = 1.0;
  p.x0 = 1e-9;
  p.xi = xi_from_tunneling(p.x0, 4500.0, 20.0, 50.0);
  p.mass = 5e-19;
  p.omega_m0 = 1.0;
  p.x_zpf = 3e-3 * p.xi;
  p.gamma_m = 1e-6;
  p.gamma_q = 1e-4;
  p.temperature = 0.010;
  return p;
}

}  // namespace x2mon
