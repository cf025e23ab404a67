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

#include <optional>
#include <string>
#include <vector>

#include "x2mon/circuit.hpp"
#include "x2mon/dynamics.hpp"
#include "x2mon/hilbert.hpp"

/// Flux-driven state swap between the qubit and the shuttle mode, in the
/// exact lab frame and in the rotating-wave effective model.
namespace x2mon {

enum class ModelKind { kLabFrame, kRwaEffective };

const char* to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& text);

/// Drive frequency and swap coupling predicted by the second-order drive
/// expansion followed by the rotating-wave approximation.
struct SwapParams {
  double omega_bar = 0.0;  ///< omega_q_bar - omega_m
  double g_sw = 0.0;       ///< g1_bar J0(delta_q / (2 omega_bar))
  double g1_bar = 0.0;
  double delta_q = 0.0;
  double omega_q_bar = 0.0;
  double omega_m = 0.0;
  double bessel_argument = 0.0;
  double j0 = 0.0;

  /// pi / (2 |g_sw|)
  double swap_time() const;
};

/// Symmetric junctions, phi_b0 in (0, pi). Throws ConfigError when the
/// resulting drive frequency is not positive.
SwapParams effective_swap_params(const CircuitParams& params, double phi_b0);

/// Thermal dissipators: qubit sigma_-/sigma_+ at gamma_q (n_q + 1) / gamma_q n_q
/// and shuttle b/b^dag at gamma_m (n_m + 1) / gamma_m n_m, with the bath
/// occupations evaluated at omega_q and omega_m for phi_b = 0.
std::vector<Collapse<double>> device_collapses(const CircuitParams& params,
                                               const OperatorSet<double>& ops);

/// H(t) = omega_q(t)/2 sz + omega_m(t) b^dag b + g1(t) X sx + g2(t) X^2 sz
///        [+ g01 X + g21 X sz + (g10 + 3 g30) sx + (g12 + 3 g32) X^2 sx],
/// X = b + b^dag, all coefficients evaluated exactly at phi_b(t).
/// `include_g2 = false` drops the g2 term.
LindbladModel<double> build_lab_frame_model(const CircuitParams& params, const FluxDrive& drive,
                                            const OperatorSet<double>& ops,
                                            bool include_g2 = true);

/// H' = g_sw (b^dag sigma_- + b sigma_+) with the device collapses.
LindbladModel<double> build_rwa_model(const CircuitParams& params, double phi_b0,
                                      const OperatorSet<double>& ops);

struct SwapStep {
  double phi_b0 = 0.5;
  std::optional<double> omega_bar;  ///< defaults to effective_swap_params
  std::optional<double> duration;   ///< defaults to pi / (2 |g_sw|)
};

struct ProtocolSchedule {
  SwapStep swap_in;
  double hold = 0.0;  ///< ns at phi_b = 0
  SwapStep swap_out;
  ModelKind model_kind = ModelKind::kRwaEffective;
  /// Keeps the sigma_z-conditioned g2 term in the lab-frame hold.
  bool retain_g2_in_hold = true;
};

struct NumericOptions {
  int fock_dim = 10;
  EvolveOptions<double> evolve;
};

struct PhaseRecord {
  std::string name;
  double duration = 0.0;
  FluxDrive drive;
  TimeSeries series;  ///< t from 0; columns sz, n_mech, fidelity, trace, purity
  bool used_static_shortcut = false;
};

struct ProtocolResult {
  std::vector<PhaseRecord> phases;  ///< swap_in, hold, swap_out
  SwapParams swap;
  double omega_bar = 0.0;  ///< swap-in drive frequency actually used
  double t_swap = 0.0;     ///< swap-in duration actually used
  /// Excited-state population of the final reduced qubit state.
  double fidelity = 0.0;
  /// Free-decay fidelity at the matched total protocol time.
  double baseline_fidelity = 0.0;
  TimeSeries baseline;
  CMatrix<double> final_state;
};

/// Swap-in, hold, swap-out. Default initial state |sigma_z = 1> (x) |0>.
/// Integration failures are rethrown with the phase name prefixed.
ProtocolResult run_swap_protocol(const CircuitParams& params, const ProtocolSchedule& schedule,
                                 const NumericOptions& numeric = {},
                                 const std::optional<DensityMatrix<double>>& rho0 = std::nullopt);

/// Qubit-only decay from |sigma_z = 1> under gamma_q and the qubit bath;
/// columns sz, fidelity, trace, purity.
TimeSeries free_decay_baseline(const CircuitParams& params, double total_time,
                               const EvolveOptions<double>& options = {});

/// Largest change of the final protocol observables (fidelity, sz, n_mech
/// at the end of each phase) when the Fock truncation grows from N to N + 5.
double fock_convergence_delta(const CircuitParams& params, const ProtocolSchedule& schedule,
                              const NumericOptions& numeric);

/// Lab-frame vs RWA comparison of the first swap from |e, 0>.
struct SwapComparison {
  double omega_bar = 0.0;
  double g_sw = 0.0;
  double predicted_time = 0.0;  ///< pi / (2 |g_sw|)
  double window = 0.0;
  double lab_max_population = 0.0;
  double lab_transfer_time = 0.0;
  double rwa_max_population = 0.0;
  double rwa_transfer_time = 0.0;
  double population_deviation = 0.0;  ///< |lab - rwa| / rwa
  double time_deviation = 0.0;        ///< |lab - rwa| / rwa
  double lab_seconds = 0.0;           ///< wall time of the lab-frame run
};

/// Population of |g, 1> is tracked over [0, window_factor * pi / (2 |g_sw|)];
/// the transfer time is the (parabolically refined) location of its maximum.
/// `omega_bar` overrides the predicted drive frequency for the lab frame.
SwapComparison compare_swap_models(const CircuitParams& params, double phi_b0,
                                   const NumericOptions& numeric, double window_factor = 2.5,
                                   std::optional<double> omega_bar = std::nullopt);

}  // namespace x2mon
