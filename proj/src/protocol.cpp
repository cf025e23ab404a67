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

#include "x2mon/protocol.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <tuple>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "x2mon/bessel.hpp"

namespace x2mon {

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLabFrame:
      return "lab-frame";
    case ModelKind::kRwaEffective:
      return "rwa-effective";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& text) {
  if (text == "lab-frame") return ModelKind::kLabFrame;
  if (text == "rwa-effective") return ModelKind::kRwaEffective;
  throw ConfigError("model_kind must be 'lab-frame' or 'rwa-effective', got '" + text + "'");
}

double SwapParams::swap_time() const {
  return std::numbers::pi / (2.0 * std::abs(g_sw));
}

SwapParams effective_swap_params(const CircuitParams& params, double phi_b0) {
  if (!(phi_b0 > 0.0 && phi_b0 < std::numbers::pi)) {
    throw std::invalid_argument("phi_b0 must lie in (0, pi)");
  }
  const DriveExpansion drive = approx_drive_params(params, phi_b0);
  SwapParams out;
  out.omega_m = coupling_set(params, 0.0).omega_m;
  out.omega_q_bar = drive.omega_q_bar;
  out.delta_q = drive.delta_q;
  out.g1_bar = drive.g1_bar;
  out.omega_bar = drive.omega_q_bar - out.omega_m;
  if (!(out.omega_bar > 0.0)) throw ConfigError("drive frequency non-positive");
  out.bessel_argument = drive.delta_q / (2.0 * out.omega_bar);
  out.j0 = bessel_j0(out.bessel_argument);
  out.g_sw = drive.g1_bar * out.j0;
  return out;
}

std::vector<Collapse<double>> device_collapses(const CircuitParams& params,
                                               const OperatorSet<double>& ops) {
  const CouplingSet rest = coupling_set(params, 0.0);
  const double n_q = thermal_occupation(rest.omega_q, params.temperature);
  const double n_m = thermal_occupation(rest.omega_m, params.temperature);
  std::vector<Collapse<double>> out = thermal_collapses(ops.sm, ops.sp, params.gamma_q, n_q);
  for (auto& c : thermal_collapses(ops.b, ops.bdag, params.gamma_m, n_m)) {
    out.push_back(std::move(c));
  }
  return out;
}

LindbladModel<double> build_lab_frame_model(const CircuitParams& params, const FluxDrive& drive,
                                            const OperatorSet<double>& ops, bool include_g2) {
  drive.validate();
  struct Terms {
    CMatrix<double> sz, num, x, x_sx, x2_sz, x_sz, sx, x2_sx;
  };
  const CMatrix<double> x = ops.b + ops.bdag;
  const CMatrix<double> x2 = x * x;
  auto terms = std::make_shared<Terms>(Terms{ops.sz, ops.num, x, x * ops.sx, x2 * ops.sz,
                                             x * ops.sz, ops.sx, x2 * ops.sx});
  const bool asymmetric = !params.symmetric();

  LindbladModel<double> model;
  model.time_independent = drive.phi_b0 == 0.0;
  model.hamiltonian = [params, drive, terms, include_g2, asymmetric](double t) {
    const CouplingSet g = modulated_coefficients(params, drive, t);
    CMatrix<double> h = (0.5 * g.omega_q) * terms->sz + g.omega_m * terms->num;
    if (g.g1 != 0.0) h += g.g1 * terms->x_sx;
    if (include_g2) h += g.g2 * terms->x2_sz;
    if (asymmetric) {
      h += g.force_const * terms->x + g.drive_sz_linear * terms->x_sz +
           g.sx_offset * terms->sx + g.sx_quadratic * terms->x2_sx;
    }
    return h;
  };
  model.collapses = device_collapses(params, ops);
  return model;
}

LindbladModel<double> build_rwa_model(const CircuitParams& params, double phi_b0,
                                      const OperatorSet<double>& ops) {
  const SwapParams swap = effective_swap_params(params, phi_b0);
  const CMatrix<double> h = swap.g_sw * (ops.bdag * ops.sm + ops.b * ops.sp);
  LindbladModel<double> model;
  model.time_independent = true;
  model.hamiltonian = [h](double) { return h; };
  model.collapses = device_collapses(params, ops);
  return model;
}

namespace {

CVector<double> unit_vector(int dim, int index) {
  CVector<double> v = CVector<double>::Zero(dim);
  v(index) = 1.0;
  return v;
}

std::vector<NamedObservable<double>> phase_observables(const OperatorSet<double>& ops,
                                                       bool target_mechanics) {
  const int n = ops.fock_dim;
  std::vector<NamedObservable<double>> obs;
  obs.push_back({"sz", [sz = ops.sz](const CMatrix<double>& rho) {
                   return expectation(rho, sz).real();
                 }});
  obs.push_back({"n_mech", [num = ops.num](const CMatrix<double>& rho) {
                   return expectation(rho, num).real();
                 }});
  if (target_mechanics) {
    obs.push_back({"fidelity", [n](const CMatrix<double>& rho) {
                     return fidelity(trace_out_qubit(rho, n), unit_vector(n, 1));
                   }});
  } else {
    obs.push_back({"fidelity", [n](const CMatrix<double>& rho) {
                     return fidelity(trace_out_boson(rho, n), unit_vector(2, kQubitExcited));
                   }});
  }
  return obs;
}

LindbladModel<double> hold_model(const CircuitParams& params, const ProtocolSchedule& schedule,
                                 const OperatorSet<double>& ops) {
  if (schedule.model_kind == ModelKind::kLabFrame) {
    return build_lab_frame_model(params, FluxDrive{}, ops, schedule.retain_g2_in_hold);
  }
  LindbladModel<double> model;
  model.time_independent = true;
  model.hamiltonian = [dim = ops.dim()](double) { return CMatrix<double>::Zero(dim, dim); };
  model.collapses = device_collapses(params, ops);
  return model;
}

struct ResolvedSwap {
  FluxDrive drive;
  double duration = 0.0;
  SwapParams predicted;
};

ResolvedSwap resolve_swap(const CircuitParams& params, const SwapStep& step) {
  ResolvedSwap out;
  out.predicted = effective_swap_params(params, step.phi_b0);
  out.drive.phi_b0 = step.phi_b0;
  out.drive.omega_bar = step.omega_bar.value_or(out.predicted.omega_bar);
  out.duration = step.duration.value_or(out.predicted.swap_time());
  if (!(out.duration > 0.0)) throw std::invalid_argument("swap duration must be positive");
  out.drive.validate();
  return out;
}

LindbladModel<double> swap_model(const CircuitParams& params, const ProtocolSchedule& schedule,
                                 const ResolvedSwap& swap, const OperatorSet<double>& ops) {
  if (schedule.model_kind == ModelKind::kLabFrame) {
    return build_lab_frame_model(params, swap.drive, ops, true);
  }
  return build_rwa_model(params, swap.drive.phi_b0, ops);
}

}  // namespace

ProtocolResult run_swap_protocol(const CircuitParams& params, const ProtocolSchedule& schedule,
                                 const NumericOptions& numeric,
                                 const std::optional<DensityMatrix<double>>& rho0) {
  if (!(schedule.hold >= 0.0)) throw std::invalid_argument("hold duration must be non-negative");
  const OperatorSet<double> ops = make_operators<double>(numeric.fock_dim);
  const ResolvedSwap swap_in = resolve_swap(params, schedule.swap_in);
  const ResolvedSwap swap_out = resolve_swap(params, schedule.swap_out);

  ProtocolResult result;
  result.swap = swap_in.predicted;
  result.omega_bar = swap_in.drive.omega_bar;
  result.t_swap = swap_in.duration;

  DensityMatrix<double> rho =
      rho0.value_or(make_state<double>(state::ExcitedFock{0}, numeric.fock_dim));
  if (rho.dim() != ops.dim()) throw std::invalid_argument("initial state dimension mismatch");

  auto run_phase = [&](const std::string& name, const LindbladModel<double>& model,
                       double duration, const FluxDrive& drive, bool target_mechanics) {
    PhaseRecord record;
    record.name = name;
    record.duration = duration;
    record.drive = drive;
    const auto observables = phase_observables(ops, target_mechanics);
    if (duration == 0.0) {
      // Nothing to integrate; one sample keeps the time axis strictly increasing.
      TimeSeries& s = record.series;
      s.times.push_back(0.0);
      for (const auto& obs : observables) {
        s.names.push_back(obs.name);
        s.columns.push_back({obs.eval(rho.matrix())});
      }
      s.names.emplace_back("trace");
      s.columns.push_back({rho.matrix().trace().real()});
      s.names.emplace_back("purity");
      s.columns.push_back({rho.matrix().squaredNorm()});
      result.phases.push_back(std::move(record));
      return;
    }
    try {
      EvolveResult<double> out = evolve(model, rho, 0.0, duration, numeric.evolve, observables);
      record.series = std::move(out.series);
      record.used_static_shortcut = out.used_static_shortcut;
      rho = DensityMatrix<double>(out.final_state);
    } catch (const IntegrationFailure& e) {
      throw IntegrationFailure("phase " + name + ": " + e.what(), e.time());
    }
    result.phases.push_back(std::move(record));
  };

  run_phase("swap_in", swap_model(params, schedule, swap_in, ops), swap_in.duration,
            swap_in.drive, true);
  run_phase("hold", hold_model(params, schedule, ops), schedule.hold, FluxDrive{}, true);
  run_phase("swap_out", swap_model(params, schedule, swap_out, ops), swap_out.duration,
            swap_out.drive, false);

  result.final_state = rho.matrix();
  result.fidelity =
      fidelity(trace_out_boson(rho.matrix(), ops.fock_dim), unit_vector(2, kQubitExcited));
  const double total = swap_in.duration + schedule.hold + swap_out.duration;
  try {
    result.baseline = free_decay_baseline(params, total, numeric.evolve);
  } catch (const IntegrationFailure& e) {
    throw IntegrationFailure(std::string("phase baseline: ") + e.what(), e.time());
  }
  result.baseline_fidelity = result.baseline.column("fidelity").back();
  return result;
}

TimeSeries free_decay_baseline(const CircuitParams& params, double total_time,
                               const EvolveOptions<double>& options) {
  if (!(total_time > 0.0)) throw std::invalid_argument("total_time must be positive");
  // Decoupled boson: two Fock levels suffice, the mode stays in |0>.
  const OperatorSet<double> ops = make_operators<double>(2);
  const CouplingSet rest = coupling_set(params, 0.0);
  LindbladModel<double> model;
  model.time_independent = true;
  model.hamiltonian = [dim = ops.dim()](double) { return CMatrix<double>::Zero(dim, dim); };
  model.collapses = thermal_collapses(ops.sm, ops.sp, params.gamma_q,
                                      thermal_occupation(rest.omega_q, params.temperature));
  std::vector<NamedObservable<double>> obs;
  obs.push_back({"sz", [sz = ops.sz](const CMatrix<double>& rho) {
                   return expectation(rho, sz).real();
                 }});
  obs.push_back({"fidelity", [](const CMatrix<double>& rho) {
                   return fidelity(trace_out_boson(rho, 2), unit_vector(2, kQubitExcited));
                 }});
  return evolve(model, make_state<double>(state::ExcitedFock{0}, 2), 0.0, total_time, options, obs)
      .series;
}

double fock_convergence_delta(const CircuitParams& params, const ProtocolSchedule& schedule,
                              const NumericOptions& numeric) {
  NumericOptions larger = numeric;
  larger.fock_dim = numeric.fock_dim + 5;
  const ProtocolResult a = run_swap_protocol(params, schedule, numeric);
  const ProtocolResult b = run_swap_protocol(params, schedule, larger);
  double delta = std::abs(a.fidelity - b.fidelity);
  for (std::size_t p = 0; p < a.phases.size(); ++p) {
    for (const char* col : {"sz", "n_mech", "fidelity"}) {
      delta = std::max(delta, std::abs(a.phases[p].series.column(col).back() -
                                       b.phases[p].series.column(col).back()));
    }
  }
  return delta;
}

namespace {

/// Location and value of the sampled maximum, refined by a parabola through
/// the three samples around it.
std::pair<double, double> refined_maximum(const std::vector<double>& t,
                                          const std::vector<double>& y) {
  const auto it = std::max_element(y.begin(), y.end());
  const std::size_t i = static_cast<std::size_t>(it - y.begin());
  if (i == 0 || i + 1 == y.size()) return {t[i], y[i]};
  const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  if (denom >= 0.0) return {t[i], y[i]};
  const double offset = 0.5 * (y0 - y2) / denom;
  const double h = t[i + 1] - t[i];
  return {t[i] + offset * h, y1 - 0.25 * (y0 - y2) * offset};
}

}  // namespace

SwapComparison compare_swap_models(const CircuitParams& params, double phi_b0,
                                   const NumericOptions& numeric, double window_factor,
                                   std::optional<double> omega_bar) {
  const SwapParams swap = effective_swap_params(params, phi_b0);
  const OperatorSet<double> ops = make_operators<double>(numeric.fock_dim);
  const DensityMatrix<double> rho0 = make_state<double>(state::ExcitedFock{0}, numeric.fock_dim);
  const int target = kQubitGround * ops.fock_dim + 1;
  const std::vector<NamedObservable<double>> obs = {
      {"population", [target](const CMatrix<double>& rho) { return rho(target, target).real(); }}};

  SwapComparison out;
  out.g_sw = swap.g_sw;
  out.omega_bar = omega_bar.value_or(swap.omega_bar);
  out.predicted_time = swap.swap_time();
  out.window = window_factor * out.predicted_time;

  const FluxDrive drive{0.0, phi_b0, out.omega_bar};
  const auto start = std::chrono::steady_clock::now();
  TimeSeries lab;
  try {
    lab = evolve(build_lab_frame_model(params, drive, ops), rho0, 0.0, out.window, numeric.evolve,
                 obs)
              .series;
  } catch (const IntegrationFailure& e) {
    throw IntegrationFailure(std::string("phase lab-frame swap: ") + e.what(), e.time());
  }
  out.lab_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  TimeSeries rwa;
  try {
    rwa = evolve(build_rwa_model(params, phi_b0, ops), rho0, 0.0, out.window, numeric.evolve, obs)
              .series;
  } catch (const IntegrationFailure& e) {
    throw IntegrationFailure(std::string("phase rwa swap: ") + e.what(), e.time());
  }

  std::tie(out.lab_transfer_time, out.lab_max_population) =
      refined_maximum(lab.times, lab.column("population"));
  std::tie(out.rwa_transfer_time, out.rwa_max_population) =
      refined_maximum(rwa.times, rwa.column("population"));
  out.population_deviation =
      std::abs(out.lab_max_population - out.rwa_max_population) / out.rwa_max_population;
  out.time_deviation =
      std::abs(out.lab_transfer_time - out.rwa_transfer_time) / out.rwa_transfer_time;
  return out;
}

}  // namespace x2mon
