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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "x2mon/constants.hpp"
#include "x2mon/errors.hpp"
#include "x2mon/hilbert.hpp"

/// Lindblad master-equation integration for time-dependent Hamiltonians.
namespace x2mon {

/// Bose-Einstein occupation 1 / (exp(omega / (k_B T / hbar)) - 1).
/// omega in Grad/s, temperature in K; zero temperature gives 0.
inline double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw std::invalid_argument("thermal_occupation: omega must be positive");
  if (!(temperature >= 0.0)) {
    throw std::invalid_argument("thermal_occupation: temperature must be non-negative");
  }
  if (temperature == 0.0) return 0.0;
  const double x = omega / (constants::kBoltzmannOverHbar * temperature);
  return 1.0 / std::expm1(x);
}

template <typename Scalar = double>
struct Collapse {
  CMatrix<Scalar> op;
  Scalar rate = 0;
};

/// H(t) plus (collapse operator, rate) pairs. `time_independent` lets the
/// integrator use the static-Hamiltonian splitting when it applies.
template <typename Scalar = double>
struct LindbladModel {
  std::function<CMatrix<Scalar>(Scalar)> hamiltonian;
  std::vector<Collapse<Scalar>> collapses;
  bool time_independent = false;
};

/// [(down, gamma (n_th + 1)), (up, gamma n_th)].
template <typename Scalar = double>
std::vector<Collapse<Scalar>> thermal_collapses(const CMatrix<Scalar>& op_down,
                                                const CMatrix<Scalar>& op_up,
                                                Scalar gamma, Scalar n_th) {
  if (!(gamma >= Scalar(0)) || !(n_th >= Scalar(0))) {
    throw std::invalid_argument("thermal_collapses: gamma and n_th must be non-negative");
  }
  return {{op_down, gamma * (n_th + Scalar(1))}, {op_up, gamma * n_th}};
}

/// -i[H(t), rho] + sum_k r_k (L_k rho L_k^dag - {L_k^dag L_k, rho} / 2).
template <typename Scalar>
CMatrix<Scalar> lindblad_rhs(const CMatrix<Scalar>& rho, const LindbladModel<Scalar>& model,
                             Scalar t) {
  const CMatrix<Scalar> h = model.hamiltonian(t);
  if (h.rows() != rho.rows() || h.cols() != rho.cols()) {
    throw std::invalid_argument("lindblad_rhs: dimension mismatch");
  }
  const std::complex<Scalar> minus_i(0, -1);
  CMatrix<Scalar> out = minus_i * (h * rho - rho * h);
  for (const auto& c : model.collapses) {
    if (c.op.rows() != rho.rows()) throw std::invalid_argument("lindblad_rhs: collapse dimension");
    if (c.rate == Scalar(0)) continue;
    const CMatrix<Scalar> ldl = c.op.adjoint() * c.op;
    out += c.rate * (c.op * rho * c.op.adjoint() - Scalar(0.5) * (ldl * rho + rho * ldl));
  }
  return out;
}

template <typename Scalar>
CMatrix<Scalar> lindblad_rhs(const DensityMatrix<Scalar>& rho, const LindbladModel<Scalar>& model,
                             Scalar t) {
  return lindblad_rhs(rho.matrix(), model, t);
}

/// Sampled observables. Columns are addressed by name.
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  std::size_t size() const { return times.size(); }

  bool has(std::string_view name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
  }

  const std::vector<double>& column(std::string_view name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::out_of_range("no column " + std::string(name));
    return columns[static_cast<std::size_t>(it - names.begin())];
  }
};

template <typename Scalar = double>
struct NamedObservable {
  std::string name;
  std::function<Scalar(const CMatrix<Scalar>&)> eval;
};

template <typename Scalar = double>
struct EvolveOptions {
  Scalar dt = Scalar(0.01);  ///< upper bound on the RK4 step, ns
  /// Steps per period of the fastest frequency in H; 0 disables the bound.
  int steps_per_period = 50;
  int samples = 500;  ///< recorded points including both end points
  bool adaptive = false;  ///< Dormand-Prince 5(4) instead of fixed-step RK4
  Scalar abs_tolerance = Scalar(1e-9);
  /// Allow the static-Hamiltonian splitting (see evolve()).
  bool allow_static_shortcut = true;
  Scalar shortcut_factor = Scalar(1000);
  Scalar trace_tolerance = Scalar(1e-6);
  Scalar negativity_tolerance = Scalar(1e-6);
};

template <typename Scalar = double>
struct EvolveResult {
  TimeSeries series;
  CMatrix<Scalar> final_state;
  std::size_t steps = 0;
  Scalar base_dt = 0;
  bool used_static_shortcut = false;
};

namespace detail {

/// Precomputed dissipator pieces for the Hermitian-state fast path.
template <typename Scalar>
struct Dissipator {
  std::vector<CMatrix<Scalar>> scaled;  // sqrt(rate) L
  CMatrix<Scalar> half_k;               // (1/2) sum rate L^dag L

  Dissipator(const std::vector<Collapse<Scalar>>& collapses, Eigen::Index dim)
      : half_k(CMatrix<Scalar>::Zero(dim, dim)) {
    for (const auto& c : collapses) {
      if (!(c.rate >= Scalar(0))) throw std::invalid_argument("collapse rates must be non-negative");
      if (c.op.rows() != dim || c.op.cols() != dim) {
        throw std::invalid_argument("collapse operator dimension mismatch");
      }
      if (c.rate == Scalar(0)) continue;
      scaled.push_back(std::sqrt(c.rate) * c.op);
      half_k += Scalar(0.5) * c.rate * (c.op.adjoint() * c.op);
    }
  }

  /// Largest total decay rate (largest eigenvalue of sum r L^dag L).
  Scalar max_rate() const {
    if (scaled.empty()) return Scalar(0);
    Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> eig(half_k, Eigen::EigenvaluesOnly);
    return Scalar(2) * eig.eigenvalues().maxCoeff();
  }

  /// Lindblad right-hand side for Hermitian rho, given H (possibly empty).
  void apply(const CMatrix<Scalar>* h, const CMatrix<Scalar>& rho, CMatrix<Scalar>& out) const {
    CMatrix<Scalar> a;
    if (h != nullptr) {
      a.noalias() = (std::complex<Scalar>(0, -1) * *h - half_k) * rho;
    } else {
      a.noalias() = -half_k * rho;
    }
    out = a + a.adjoint();
    for (const auto& l : scaled) out.noalias() += l * rho * l.adjoint();
  }
};

template <typename Scalar>
Scalar spectral_spread(const CMatrix<Scalar>& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff() - eig.eigenvalues().minCoeff();
}

/// True when every collapse operator satisfies [H, L] = lambda L.
template <typename Scalar>
bool collapses_are_eigenoperators(const CMatrix<Scalar>& h,
                                  const std::vector<CMatrix<Scalar>>& scaled) {
  const Scalar h_scale = std::max(Scalar(1), h.cwiseAbs().maxCoeff());
  for (const auto& l : scaled) {
    const CMatrix<Scalar> comm = h * l - l * h;
    const std::complex<Scalar> lambda = (l.adjoint() * comm).trace() / l.squaredNorm();
    const Scalar residual = (comm - lambda * l).cwiseAbs().maxCoeff();
    if (residual > Scalar(1e-10) * h_scale * l.cwiseAbs().maxCoeff()) return false;
  }
  return true;
}

template <typename Scalar>
void hermitize(CMatrix<Scalar>& rho) {
  rho = Scalar(0.5) * (rho + rho.adjoint()).eval();
}

}  // namespace detail

/// Integrates the master equation from t0 to t1 and samples observables on
/// `options.samples` evenly spaced times (both ends included).
///
/// Fixed-step RK4 by default, with step min(options.dt, 2 pi / (steps_per_period
/// * omega_max)); omega_max is the largest spectral spread of H over the span
/// plus the largest total decay rate. The state is re-Hermitized after every
/// step. "trace" and "purity" columns are always appended.
///
/// When the model is time independent and every collapse operator is an
/// eigenoperator of [H, .], the evolution factorizes exactly as
/// rho(t) = U(t) e^{tD}[rho0] U(t)^dag; only the dissipator is integrated, with
/// steps up to shortcut_factor times the base step.
///
/// Throws IntegrationFailure when the trace drifts or the state loses
/// positivity beyond the configured tolerances.
template <typename Scalar>
EvolveResult<Scalar> evolve(const LindbladModel<Scalar>& model, const DensityMatrix<Scalar>& rho0,
                            Scalar t0, Scalar t1, const EvolveOptions<Scalar>& options = {},
                            const std::vector<NamedObservable<Scalar>>& observables = {}) {
  using Matrix = CMatrix<Scalar>;
  if (!(t1 >= t0)) throw std::invalid_argument("evolve: t_span must be increasing");
  if (options.samples < 2) throw std::invalid_argument("evolve: need at least two samples");
  if (!(options.dt > Scalar(0))) throw std::invalid_argument("evolve: dt must be positive");

  const Eigen::Index dim = rho0.dim();
  const Matrix h0 = model.hamiltonian(t0);
  if (h0.rows() != dim || h0.cols() != dim) {
    throw std::invalid_argument("evolve: Hamiltonian and state dimensions differ");
  }
  if ((h0 - h0.adjoint()).cwiseAbs().maxCoeff() >= Scalar(1e-9)) {
    throw std::invalid_argument("evolve: Hamiltonian is not Hermitian");
  }
  const detail::Dissipator<Scalar> dissipator(model.collapses, dim);
  const Scalar max_rate = dissipator.max_rate();

  Scalar spread = detail::spectral_spread(h0);
  if (!model.time_independent) {
    for (int k = 1; k <= 8; ++k) {
      spread = std::max(spread, detail::spectral_spread<Scalar>(
                                    model.hamiltonian(t0 + (t1 - t0) * Scalar(k) / Scalar(8))));
    }
  }
  const Scalar omega_max = spread + max_rate;
  Scalar base_dt = options.dt;
  if (options.steps_per_period > 0 && omega_max > Scalar(0)) {
    base_dt = std::min(base_dt, Scalar(2) * std::numbers::pi_v<Scalar> /
                                    (Scalar(options.steps_per_period) * omega_max));
  }

  EvolveResult<Scalar> result;
  result.base_dt = base_dt;
  TimeSeries& series = result.series;
  for (const auto& obs : observables) series.names.push_back(obs.name);
  series.names.emplace_back("trace");
  series.names.emplace_back("purity");
  series.columns.resize(series.names.size());

  auto record = [&](Scalar t, const Matrix& rho) {
    const Scalar trace = rho.trace().real();
    const bool finite = rho.allFinite();
    if (!finite || std::abs(trace - Scalar(1)) > options.trace_tolerance) {
      std::ostringstream msg;
      msg << "trace drift " << (trace - Scalar(1)) << " at t=" << double(t) << " ns";
      throw IntegrationFailure(msg.str(), double(t));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(rho, Eigen::EigenvaluesOnly);
    const Scalar lowest = eig.eigenvalues().minCoeff();
    if (lowest < -options.negativity_tolerance) {
      std::ostringstream msg;
      msg << "negative eigenvalue " << double(lowest) << " at t=" << double(t) << " ns";
      throw IntegrationFailure(msg.str(), double(t));
    }
    series.times.push_back(double(t));
    std::size_t col = 0;
    for (const auto& obs : observables) series.columns[col++].push_back(double(obs.eval(rho)));
    series.columns[col++].push_back(double(trace));
    series.columns[col].push_back(double(rho.squaredNorm()));
  };

  const int intervals = options.samples - 1;
  const Scalar span = t1 - t0;
  auto sample_time = [&](int k) { return t0 + span * Scalar(k) / Scalar(intervals); };

  Matrix rho = rho0.matrix();
  record(t0, rho);

  const bool shortcut = model.time_independent && options.allow_static_shortcut &&
                        detail::collapses_are_eigenoperators(h0, dissipator.scaled);
  result.used_static_shortcut = shortcut;

  if (shortcut) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(h0);
    const Matrix& vecs = eig.eigenvectors();
    Scalar step = options.shortcut_factor * base_dt;
    if (max_rate > Scalar(0)) step = std::min(step, Scalar(0.05) / max_rate);
    Matrix rho_d = rho;  // dissipator-only state in the frame of H
    Matrix k1, k2, k3, k4;
    for (int k = 1; k <= intervals; ++k) {
      const Scalar interval = sample_time(k) - sample_time(k - 1);
      if (!dissipator.scaled.empty() && interval > Scalar(0)) {
        const long n = std::max(1L, static_cast<long>(std::ceil(interval / step - Scalar(1e-9))));
        const Scalar h = interval / Scalar(n);
        for (long s = 0; s < n; ++s) {
          dissipator.apply(nullptr, rho_d, k1);
          dissipator.apply(nullptr, rho_d + Scalar(0.5) * h * k1, k2);
          dissipator.apply(nullptr, rho_d + Scalar(0.5) * h * k2, k3);
          dissipator.apply(nullptr, rho_d + h * k3, k4);
          rho_d += (h / Scalar(6)) * (k1 + Scalar(2) * (k2 + k3) + k4);
          detail::hermitize(rho_d);
          ++result.steps;
        }
      }
      const Scalar elapsed = sample_time(k) - t0;
      CVector<Scalar> phases(dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        phases(i) = std::polar(Scalar(1), -eig.eigenvalues()(i) * elapsed);
      }
      const Matrix u = vecs * phases.asDiagonal() * vecs.adjoint();
      rho = u * rho_d * u.adjoint();
      detail::hermitize(rho);
      record(sample_time(k), rho);
    }
    result.final_state = rho;
    return result;
  }

  Matrix k1, k2, k3, k4, k5, k6, k7, stage;
  auto rhs = [&](Scalar t, const Matrix& state, Matrix& out) {
    if (model.time_independent) {
      dissipator.apply(&h0, state, out);
      return;
    }
    const Matrix h = model.hamiltonian(t);
    dissipator.apply(&h, state, out);
  };
  // Static models reuse H(t0).
  Matrix h_start = h0, h_mid = h0, h_end = h0;

  if (!options.adaptive) {
    for (int k = 1; k <= intervals; ++k) {
      Scalar t = sample_time(k - 1);
      const Scalar interval = sample_time(k) - t;
      const long n = std::max(1L, static_cast<long>(std::ceil(interval / base_dt - Scalar(1e-9))));
      const Scalar h = interval / Scalar(n);
      for (long s = 0; s < n; ++s) {
        if (!model.time_independent) {
          h_start = model.hamiltonian(t);
          h_mid = model.hamiltonian(t + Scalar(0.5) * h);
          h_end = model.hamiltonian(t + h);
        }
        dissipator.apply(&h_start, rho, k1);
        stage = rho + Scalar(0.5) * h * k1;
        dissipator.apply(&h_mid, stage, k2);
        stage = rho + Scalar(0.5) * h * k2;
        dissipator.apply(&h_mid, stage, k3);
        stage = rho + h * k3;
        dissipator.apply(&h_end, stage, k4);
        rho += (h / Scalar(6)) * (k1 + Scalar(2) * (k2 + k3) + k4);
        detail::hermitize(rho);
        t = sample_time(k - 1) + h * Scalar(s + 1);
        ++result.steps;
      }
      record(sample_time(k), rho);
    }
    result.final_state = rho;
    return result;
  }

  // Dormand-Prince 5(4), error measured as the max-abs entry difference.
  constexpr Scalar a21 = Scalar(1) / 5;
  constexpr Scalar a31 = Scalar(3) / 40, a32 = Scalar(9) / 40;
  constexpr Scalar a41 = Scalar(44) / 45, a42 = Scalar(-56) / 15, a43 = Scalar(32) / 9;
  constexpr Scalar a51 = Scalar(19372) / 6561, a52 = Scalar(-25360) / 2187,
                   a53 = Scalar(64448) / 6561, a54 = Scalar(-212) / 729;
  constexpr Scalar a61 = Scalar(9017) / 3168, a62 = Scalar(-355) / 33,
                   a63 = Scalar(46732) / 5247, a64 = Scalar(49) / 176,
                   a65 = Scalar(-5103) / 18656;
  constexpr Scalar b1 = Scalar(35) / 384, b3 = Scalar(500) / 1113, b4 = Scalar(125) / 192,
                   b5 = Scalar(-2187) / 6784, b6 = Scalar(11) / 84;
  constexpr Scalar e1 = Scalar(71) / 57600, e3 = Scalar(-71) / 16695, e4 = Scalar(71) / 1920,
                   e5 = Scalar(-17253) / 339200, e6 = Scalar(22) / 525, e7 = Scalar(-1) / 40;

  Scalar h = base_dt;
  Matrix next;
  for (int k = 1; k <= intervals; ++k) {
    Scalar t = sample_time(k - 1);
    const Scalar t_end = sample_time(k);
    while (t < t_end) {
      const bool last = t + h >= t_end;
      const Scalar step = last ? t_end - t : h;
      rhs(t, rho, k1);
      rhs(t + step / 5, rho + step * a21 * k1, k2);
      rhs(t + step * Scalar(3) / 10, rho + step * (a31 * k1 + a32 * k2), k3);
      rhs(t + step * Scalar(4) / 5, rho + step * (a41 * k1 + a42 * k2 + a43 * k3), k4);
      rhs(t + step * Scalar(8) / 9, rho + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5);
      rhs(t + step, rho + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);
      next = rho + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      rhs(t + step, next, k7);
      const Scalar err =
          (step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).cwiseAbs().maxCoeff();
      const Scalar factor =
          err > Scalar(0)
              ? std::clamp(Scalar(0.9) * std::pow(options.abs_tolerance / err, Scalar(0.2)),
                           Scalar(0.2), Scalar(5))
              : Scalar(5);
      if (err <= options.abs_tolerance) {
        rho = next;
        detail::hermitize(rho);
        t = last ? t_end : t + step;
        ++result.steps;
        if (!last) h = step * factor;
      } else {
        h = step * factor;
        if (h < Scalar(1e-14) * std::max(Scalar(1), std::abs(t))) {
          throw IntegrationFailure("adaptive step size underflow", double(t));
        }
      }
    }
    record(t_end, rho);
  }
  result.final_state = rho;
  return result;
}

}  // namespace x2mon
