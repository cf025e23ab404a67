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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "x2mon/circuit.hpp"

namespace x2mon {
namespace {

using oracle::Real;

TEST(Tunneling, ReferenceJunctionNearTenthOfNanometre) {
  const double xi = xi_from_tunneling(1e-9, 4500.0, 20.0, 50.0);
  EXPECT_NEAR(xi, 0.104e-9, 0.001e-9);
}

TEST(Tunneling, LogarithmOfEGivesX0) {
  // ratio = Delta R_K / (8 E_J R_N0) = e
  const double e_j = 10.0, r_n0 = 100.0;
  const double gap = std::numbers::e * 8.0 * e_j * r_n0 / constants::kResistanceQuantum;
  EXPECT_NEAR(xi_from_tunneling(2e-9, gap, e_j, r_n0), 2e-9, 1e-24);
}

TEST(Tunneling, LinearInX0) {
  const double a = xi_from_tunneling(1e-9, 4500.0, 20.0, 50.0);
  const double b = xi_from_tunneling(2e-9, 4500.0, 20.0, 50.0);
  EXPECT_DOUBLE_EQ(b, 2.0 * a);
}

TEST(Tunneling, TransparentJunctionRejected) {
  EXPECT_THROW(xi_from_tunneling(1e-9, 0.1, 20.0, 50.0), DomainError);
  EXPECT_THROW(xi_from_tunneling(-1e-9, 4500.0, 20.0, 50.0), std::invalid_argument);
}

TEST(JosephsonPair, RestValuesExact) {
  const auto p = oracle::asymmetric_device();
  const auto [e1, e2] = josephson_energy_pair(p, 0.0);
  EXPECT_EQ(e1, 19.0);
  EXPECT_EQ(e2, 21.0);
}

TEST(JosephsonPair, OneTunnelingLength) {
  const auto p = oracle::device();
  const auto [e1, e2] = josephson_energy_pair(p, p.xi);
  EXPECT_NEAR(e1, 7.358, 1e-3);
  EXPECT_NEAR(e2, 54.366, 1e-3);
}

TEST(JosephsonPair, HyperbolicIdentities) {
  const auto p = oracle::device();
  for (double f : {-1.0, -0.5, 0.5, 1.0}) {
    const double d = f * p.xi;
    const auto [e1, e2] = josephson_energy_pair(p, d);
    EXPECT_NEAR(e1 + e2 - 2.0 * 20.0 * std::cosh(f), 0.0, 1e-12);
    EXPECT_NEAR(e2 - e1 - 2.0 * 20.0 * std::sinh(f), 0.0, 1e-12);
  }
}

TEST(ChargingEnergy, RestMatchesCapacitanceSum) {
  const auto p = oracle::asymmetric_device();
  const double e = constants::kElementaryCharge;
  const double expected =
      e * e / (2.0 * (2.0 * p.c_j + p.c_b + p.c_g)) / constants::kHbar / 1e9;
  EXPECT_NEAR(charging_energy(p, 0.0), expected, 1e-14 * expected);
  EXPECT_NEAR(p.charging_energy_at_rest(), expected, 1e-14 * expected);
}

TEST(ChargingEnergy, ConstantWithoutCapacitances) {
  const auto p = oracle::device();
  for (double f : {-0.9, -0.1, 0.0, 0.3, 0.8}) EXPECT_EQ(charging_energy(p, f * p.x0), 1.0);
}

TEST(ChargingEnergy, CurvatureMatchesParallelPlateFactor) {
  const auto p = oracle::asymmetric_device();
  const Real h = Real(p.x_zpf) / 100;
  auto f = [&](Real d) { return charging_energy<Real>(p, d); };
  const Real d2 = (f(h) - 2 * f(0) + f(-h)) / (h * h);
  const Real expected = -2 * Real(p.c_j) / ((2 * Real(p.c_j) + p.c_b + p.c_g) * p.x0 * p.x0);
  // u^2 Taylor factor of E_C(delta) / E_C(0)
  EXPECT_NEAR(double(d2 / 2 / f(0) / expected), 1.0, 1e-6);
}

TEST(ChargingEnergy, ContactRejected) {
  const auto p = oracle::asymmetric_device();
  EXPECT_THROW(charging_energy(p, p.x0), DomainError);
  EXPECT_THROW(charging_energy(p, -1.5 * p.x0), DomainError);
}

TEST(QubitZpf, ReferenceValue) {
  const auto z = qubit_zpf(1.0, 40.0, 0.0);
  EXPECT_NEAR(z.phi_zpf, 0.47287, 1e-5);
}

TEST(QubitZpf, ProductIsOneHalf) {
  for (double phi : {-2.5, -0.7, 0.0, 0.4, 3.0}) {
    const auto z = qubit_zpf(1.3, 37.0, phi);
    EXPECT_NEAR(z.n_zpf * z.phi_zpf, 0.5, 1e-15);
  }
}

TEST(QubitZpf, ErrorsAtPi) {
  EXPECT_THROW(qubit_zpf(1.0, 40.0, std::numbers::pi), DomainError);
  EXPECT_THROW(qubit_zpf(1.0, 40.0, -4.0), DomainError);
}

TEST(ZeroPoint, ReferenceMass) {
  const double x = x_zpf_from_mass(5e-19, 1.0);
  EXPECT_NEAR(x, 3.25e-13, 0.01e-13);
  const double ratio = x / xi_from_tunneling(1e-9, 4500.0, 20.0, 50.0);
  EXPECT_NEAR(ratio, 3.1e-3, 0.05e-3);
}

TEST(ZeroPoint, QuadrupledMassHalves) {
  EXPECT_DOUBLE_EQ(x_zpf_from_mass(2e-18, 1.0), 0.5 * x_zpf_from_mass(5e-19, 1.0));
}

TEST(ZeroPoint, MonotoneInMass) {
  double last = x_zpf_from_mass(1e-21, 1.0);
  for (double m = 1e-20; m < 1e-10; m *= 10.0) {
    const double x = x_zpf_from_mass(m, 1.0);
    EXPECT_LT(x, last);
    last = x;
  }
  EXPECT_LT(last, 1e-16);
}

TEST(CouplingSet, QuadraticCouplingAtZeroFlux) {
  const auto g = coupling_set(oracle::device(), 0.0);
  EXPECT_NEAR(g.g2, 0.25 * 9e-6 * std::sqrt(320.0), 1e-12);
  EXPECT_NEAR(g.g2, 4.02e-5, 0.01e-5);
  EXPECT_EQ(g.g2, g.g22);
  EXPECT_EQ(g.g1, 0.0);
}

TEST(CouplingSet, TanCarryingTermsVanishAtZeroFlux) {
  const auto g = coupling_set(oracle::device(), 0.0);
  for (double v : {g.g10, g.g11, g.g12, g.g30, g.g31, g.g32, g.g1}) EXPECT_EQ(v, 0.0);
}

TEST(CouplingSet, SymmetryKillSwitch) {
  const auto p = oracle::device();
  for (double phi : {-2.0, -0.3, 0.0, 0.1, 1.7}) {
    const auto g = coupling_set(p, phi);
    for (double v : {g.g01, g.g10, g.g12, g.g21, g.g30, g.g32}) EXPECT_EQ(v, 0.0) << phi;
  }
}

TEST(CouplingSet, ParityInFlux) {
  const auto p = oracle::device();
  for (double phi : {0.01, 0.2, 1.1, 2.9}) {
    const auto a = coupling_set(p, phi);
    const auto b = coupling_set(p, -phi);
    EXPECT_EQ(a.g1, -b.g1);
    EXPECT_EQ(a.g2, b.g2);
    EXPECT_EQ(a.omega_q, b.omega_q);
  }
}

TEST(CouplingSet, TransitionFrequencyConvention) {
  const auto g = coupling_set(oracle::device(), 0.0);
  EXPECT_NEAR(g.omega_p0, std::sqrt(320.0), 1e-12);
  EXPECT_DOUBLE_EQ(g.omega_q, g.omega_p0 - 1.0);
  EXPECT_GT(g.omega_q, 16.5);
  EXPECT_LT(g.omega_q, 17.5);
}

TEST(CouplingSet, MechanicalRenormalization) {
  const auto p = oracle::asymmetric_device();
  const auto g = coupling_set(p, 0.3);
  EXPECT_DOUBLE_EQ(g.omega_m, p.omega_m0 + 2.0 * g.g02 + g.g22 + 6.0 * g.g42);
  EXPECT_DOUBLE_EQ(g.g1, g.g11 + 3.0 * g.g31);
  EXPECT_DOUBLE_EQ(g.g2, g.g22 + 12.0 * g.g42);
}

TEST(CouplingSet, AsymmetricG21MatchesFiniteDifference) {
  auto p = oracle::device();
  p.e_j1 = 19.0;
  p.e_j2 = 21.0;
  const auto g = coupling_set(p, 0.0);
  const double d0 = 0.05;
  EXPECT_NEAR(g.g21, 0.5 * d0 * (p.x_zpf / p.xi) * g.omega_p0, 1e-15);
  const auto parent = oracle::parents(p, 0.0).front();
  const auto t = oracle::taylor(parent.f, p.x_zpf, Real(p.x_zpf) / 100);
  EXPECT_NEAR(double(g.g21 / t.c1), 1.0, 1e-6);
}

struct LedgerCase {
  double phi_b;
  bool capacitances;
};

class LedgerOracle : public ::testing::TestWithParam<LedgerCase> {};

TEST_P(LedgerOracle, EveryEntryMatchesTaylorCoefficient) {
  auto p = oracle::asymmetric_device();
  if (!GetParam().capacitances) p.c_j = p.c_b = p.c_g = 0.0;
  const double phi = GetParam().phi_b;
  const auto g = coupling_set(p, phi);
  const Real h = Real(p.x_zpf) / 100;
  std::vector<std::tuple<double, Real, Real>> pairs;  // value, reference, family scale
  for (const auto& parent : oracle::parents(p, phi)) {
    const auto t = oracle::taylor(parent.f, p.x_zpf, h);
    if (parent.name == "2") {
      pairs.push_back({g.g21, t.c1, std::abs(t.c0)});
      pairs.push_back({g.g22, t.c2, std::abs(t.c0)});
      EXPECT_NEAR(double(t.c0 / g.omega_p0), 1.0, 1e-12);
    } else if (parent.name == "4") {
      pairs.push_back({g.g42, t.c2, std::abs(t.c0)});
    } else if (parent.name == "0") {
      pairs.push_back({g.g01, t.c1, std::abs(t.c0)});
      pairs.push_back({g.g02, t.c2, std::abs(t.c0)});
    } else if (parent.name == "1") {
      pairs.push_back({g.g10, t.c0, std::abs(t.c0)});
      pairs.push_back({g.g11, t.c1, std::abs(t.c0)});
      pairs.push_back({g.g12, t.c2, std::abs(t.c0)});
    } else {
      pairs.push_back({g.g30, t.c0, std::abs(t.c0)});
      pairs.push_back({g.g31, t.c1, std::abs(t.c0)});
      pairs.push_back({g.g32, t.c2, std::abs(t.c0)});
    }
  }
  ASSERT_EQ(pairs.size(), 11u);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [value, reference, scale] = pairs[i];
    if (value == 0.0) {
      // stencil rounding on a constant parent
      EXPECT_LT(double(std::abs(reference) / scale), 1e-12) << "entry " << i;
    } else {
      EXPECT_NEAR(double(value / reference), 1.0, 1e-6) << "entry " << i;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Flux, LedgerOracle,
                         ::testing::Values(LedgerCase{0.3, true}, LedgerCase{0.3, false},
                                           LedgerCase{-1.2, true}, LedgerCase{2.5, true}));

TEST(CouplingSet, LiteralG22AgreesForSymmetricTransmon) {
  const auto p = oracle::device();
  EXPECT_DOUBLE_EQ(literal_g22(p, 0.4), coupling_set(p, 0.4).g22);
  auto a = p;
  a.e_j1 = 19.0;
  a.e_j2 = 21.0;
  // -d0^2/8 correction with d0 = 0.05
  EXPECT_NEAR(coupling_set(a, 0.0).g22 / literal_g22(a, 0.0), 1.0 - 0.05 * 0.05 / 2.0, 1e-12);
}

TEST(CouplingSet, SymmetricClosedFormDiffersInSecondTerm) {
  const auto p = oracle::device();
  const double r = p.e_c / p.e_j1;
  for (double phi : {0.05, 0.5, 1.5}) {
    const double ledger = coupling_set(p, phi).g1;
    const double closed = symmetric_g1_closed_form(p, phi);
    const double term = p.e_j1 * (p.x_zpf / p.xi) * std::tan(phi / 2.0) * std::pow(r, 0.75) *
                        std::pow(std::cos(phi / 2.0), 0.25);
    EXPECT_NEAR(ledger - closed, -term, 1e-15);
  }
  EXPECT_THROW(symmetric_g1_closed_form(oracle::asymmetric_device(), 0.1),
               UnsupportedConfiguration);
}

TEST(Modulated, NoDriveMatchesStatic) {
  const auto p = oracle::device();
  const FluxDrive drive{0.2, 0.0, 3.0};
  const auto ref = coupling_set(p, 0.2);
  for (double t : {0.0, 1.3, 77.0}) {
    const auto g = modulated_coefficients(p, drive, t);
    EXPECT_EQ(g.g1, ref.g1);
    EXPECT_EQ(g.omega_q, ref.omega_q);
  }
}

TEST(Modulated, StartOfDriveMatchesAmplitude) {
  const auto p = oracle::device();
  const auto g = modulated_coefficients(p, FluxDrive{0.0, 0.5, 15.6}, 0.0);
  EXPECT_EQ(g.g1, coupling_set(p, 0.5).g1);
}

TEST(Modulated, InstantaneousFluxBeyondPiRejected) {
  const auto p = oracle::device();
  EXPECT_THROW(modulated_coefficients(p, FluxDrive{2.0, 1.5, 1.0}, 0.0), DomainError);
  EXPECT_THROW(FluxDrive({2.0, 1.5, 1.0}).validate(), DomainError);
  EXPECT_THROW(FluxDrive({0.0, 0.5, 0.0}).validate(), std::invalid_argument);
  EXPECT_NO_THROW(FluxDrive({0.0, 0.5, 1.0}).validate());
}

// Quadrature of omega_q(t) over one drive period.
double averaged_qubit_frequency(const CircuitParams& p, double phi_b0) {
  const int n = 20000;
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * (k + 0.5) / n;
    sum += coupling_set(p, phi_b0 * std::cos(theta)).omega_q;
  }
  return sum / n;
}

TEST(Modulated, TimeAveragedShiftIsHalfTheDriveExpansion) {
  // Transition-frequency convention: the average shift is phi_b0^2 omega_p0 / 32,
  // half of the quoted delta_q (which assumes omega_q = 2 (omega_p0 - E_C)).
  const auto p = oracle::device();
  const auto rest = coupling_set(p, 0.0);
  const auto approx = approx_drive_params(p, 0.5);
  const double shift = rest.omega_q - averaged_qubit_frequency(p, 0.5);
  EXPECT_NEAR(shift / (0.5 * approx.delta_q), 1.0, 5e-3);
}

TEST(DriveExpansion, NoDrive) {
  const auto p = oracle::device();
  const auto d = approx_drive_params(p, 0.0);
  EXPECT_EQ(d.omega_q_bar, coupling_set(p, 0.0).omega_q);
  EXPECT_EQ(d.delta_q, 0.0);
  EXPECT_EQ(d.g1_bar, 0.0);
}

TEST(DriveExpansion, ReferenceValues) {
  const auto p = oracle::device();
  const auto d = approx_drive_params(p, 0.5);
  EXPECT_NEAR(d.delta_q, 0.2795, 1e-4);
  EXPECT_NEAR(d.g1_bar, -0.01101, 1e-5);
  EXPECT_GT(std::abs(d.g1_bar), 0.01 * coupling_set(p, 0.0).omega_m);
}

TEST(DriveExpansion, AsymmetricRejected) {
  EXPECT_THROW(approx_drive_params(oracle::asymmetric_device(), 0.5), UnsupportedConfiguration);
}

TEST(FluxSweep, RowAtZeroAndErrors) {
  const auto p = oracle::device();
  const std::vector<double> grid = {-0.1, 0.0, 0.1, std::numbers::pi};
  const auto rows = flux_sweep(p, grid);
  ASSERT_EQ(rows.size(), 4u);
  ASSERT_TRUE(rows[1].couplings);
  EXPECT_EQ(rows[1].couplings->g1, 0.0);
  EXPECT_NEAR(rows[1].couplings->g2, 4.02e-5, 0.01e-5);
  EXPECT_FALSE(rows[3].couplings);
  EXPECT_NE(rows[3].error.find("phi_b=3.14159"), std::string::npos);
  EXPECT_TRUE(flux_sweep(p, std::vector<double>{}).empty());
}

TEST(FluxSweep, QubitFrequencyEvenAndNonIncreasing) {
  const auto p = oracle::device();
  double last = coupling_set(p, 0.0).omega_q;
  for (double phi = 0.05; phi < 3.1; phi += 0.05) {
    const auto a = coupling_set(p, phi);
    EXPECT_EQ(a.omega_q, coupling_set(p, -phi).omega_q);
    EXPECT_LE(a.omega_q, last);
    last = a.omega_q;
  }
}

TEST(FluxSweep, CrossoverNearZeroFlux) {
  const auto p = oracle::device();
  const double star = find_coupling_crossover(p, 1e-6, 0.05, 1e-9);
  const auto g = coupling_set(p, star);
  EXPECT_GT(star, 0.0);
  EXPECT_LT(star, 0.05);
  EXPECT_NEAR(std::abs(g.g1) / std::abs(g.g2), 1.0, 1e-5);
  // the first grid point past the crossover has |g1| > |g2|
  const auto rows = flux_sweep(p, std::vector<double>{0.5 * star, 2.0 * star});
  EXPECT_LT(std::abs(rows[0].couplings->g1), std::abs(rows[0].couplings->g2));
  EXPECT_GT(std::abs(rows[1].couplings->g1), std::abs(rows[1].couplings->g2));
  EXPECT_THROW(find_coupling_crossover(p, 0.1, 0.2), std::invalid_argument);
}

TEST(CheckParams, RejectsAndWarns) {
  auto p = oracle::device();
  EXPECT_TRUE(check_params(p).empty());
  p.x_zpf = 2.0 * p.xi;
  EXPECT_EQ(check_params(p).size(), 1u);
  p = oracle::device();
  p.mass = -1.0;
  EXPECT_THROW(check_params(p), std::invalid_argument);
  p = oracle::device();
  p.e_c = 0.0;
  EXPECT_THROW(check_params(p), std::invalid_argument);
}

}  // namespace
}  // namespace x2mon
