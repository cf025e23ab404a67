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
#include <complex>
#include <stdexcept>
#include <variant>

/// Dense operator algebra on qubit (x) truncated Fock space.
///
/// Tensor ordering is qubit (x) boson everywhere: basis index = q * N + n,
/// with qubit index 0 = excited (sigma_z = +1) and 1 = ground, so that
/// sigma_z = diag(1, -1) and sigma_x sigma_y = i sigma_z. Build operators
/// and states through the factories below, never from raw indices.
namespace x2mon {

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

inline constexpr int kQubitExcited = 0;
inline constexpr int kQubitGround = 1;

/// Kronecker product a (x) b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Single-factor Pauli and ladder matrices.
template <typename Scalar>
struct Pauli {
  static CMatrix<Scalar> x() {
    CMatrix<Scalar> m = CMatrix<Scalar>::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1;
    return m;
  }
  static CMatrix<Scalar> y() {
    CMatrix<Scalar> m = CMatrix<Scalar>::Zero(2, 2);
    m(0, 1) = std::complex<Scalar>(0, -1);
    m(1, 0) = std::complex<Scalar>(0, 1);
    return m;
  }
  static CMatrix<Scalar> z() {
    CMatrix<Scalar> m = CMatrix<Scalar>::Zero(2, 2);
    m(0, 0) = 1;
    m(1, 1) = -1;
    return m;
  }
  /// |e><g|
  static CMatrix<Scalar> raising() {
    CMatrix<Scalar> m = CMatrix<Scalar>::Zero(2, 2);
    m(kQubitExcited, kQubitGround) = 1;
    return m;
  }
  static CMatrix<Scalar> lowering() { return raising().adjoint(); }
};

/// Truncated bosonic lowering operator, b|n> = sqrt(n)|n-1>.
template <typename Scalar>
CMatrix<Scalar> boson_lowering(int fock_dim) {
  CMatrix<Scalar> b = CMatrix<Scalar>::Zero(fock_dim, fock_dim);
  for (int n = 1; n < fock_dim; ++n) b(n - 1, n) = std::sqrt(Scalar(n));
  return b;
}

/// Every embedded operator on the d = 2N joint space.
template <typename Scalar>
struct OperatorSet {
  int fock_dim = 0;
  CMatrix<Scalar> b, bdag, num;
  CMatrix<Scalar> sx, sy, sz, sp, sm;
  CMatrix<Scalar> id;

  int dim() const { return 2 * fock_dim; }

  /// Embeds a 2x2 qubit operator.
  CMatrix<Scalar> qubit(const CMatrix<Scalar>& op) const {
    return kron(op, CMatrix<Scalar>::Identity(fock_dim, fock_dim));
  }
  /// Embeds an N x N boson operator.
  CMatrix<Scalar> boson(const CMatrix<Scalar>& op) const {
    return kron(CMatrix<Scalar>::Identity(2, 2), op);
  }
  /// Basis vector |q> (x) |n>.
  CVector<Scalar> basis(int qubit_index, int n) const {
    if (qubit_index < 0 || qubit_index > 1 || n < 0 || n >= fock_dim) {
      throw std::invalid_argument("basis state outside the truncated space");
    }
    CVector<Scalar> v = CVector<Scalar>::Zero(dim());
    v(qubit_index * fock_dim + n) = 1;
    return v;
  }
};

template <typename Scalar = double>
OperatorSet<Scalar> make_operators(int fock_dim) {
  if (fock_dim < 2) throw std::invalid_argument("fock_dim must be at least 2");
  OperatorSet<Scalar> ops;
  ops.fock_dim = fock_dim;
  const CMatrix<Scalar> b = boson_lowering<Scalar>(fock_dim);
  ops.b = ops.boson(b);
  ops.bdag = ops.b.adjoint();
  ops.num = ops.bdag * ops.b;
  ops.sx = ops.qubit(Pauli<Scalar>::x());
  ops.sy = ops.qubit(Pauli<Scalar>::y());
  ops.sz = ops.qubit(Pauli<Scalar>::z());
  ops.sp = ops.qubit(Pauli<Scalar>::raising());
  ops.sm = ops.qubit(Pauli<Scalar>::lowering());
  ops.id = CMatrix<Scalar>::Identity(ops.dim(), ops.dim());
  return ops;
}

/// A validated density matrix: Hermitian, unit trace, numerically positive.
template <typename Scalar>
class DensityMatrix {
 public:
  /// Validates the invariants and throws std::invalid_argument on violation.
  explicit DensityMatrix(CMatrix<Scalar> rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
      throw std::invalid_argument("density matrix must be square");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() >= Scalar(1e-10)) {
      throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - std::complex<Scalar>(1)) >= Scalar(1e-9)) {
      throw std::invalid_argument("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> eig(rho_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < Scalar(-1e-8)) {
      throw std::invalid_argument("density matrix has negative eigenvalues");
    }
  }

  static DensityMatrix pure(const CVector<Scalar>& psi) {
    return DensityMatrix(psi * psi.adjoint() / psi.squaredNorm());
  }

  const CMatrix<Scalar>& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

 private:
  CMatrix<Scalar> rho_;
};

/// Truncated thermal populations proportional to (n_th / (1 + n_th))^n.
template <typename Scalar>
CMatrix<Scalar> thermal_boson(Scalar n_th, int fock_dim) {
  if (n_th < Scalar(0)) throw std::invalid_argument("n_th must be non-negative");
  CMatrix<Scalar> rho = CMatrix<Scalar>::Zero(fock_dim, fock_dim);
  const Scalar ratio = n_th / (Scalar(1) + n_th);
  Scalar weight = 1;
  Scalar total = 0;
  for (int n = 0; n < fock_dim; ++n) {
    rho(n, n) = weight;
    total += weight;
    weight *= ratio;
  }
  return rho / total;
}

namespace state {
struct Fock {
  int n;  ///< qubit in the ground state
};
struct ExcitedFock {
  int n;
};
struct ThermalGround {
  double n_th;
};
template <typename Scalar>
struct Product {
  CMatrix<Scalar> qubit;  ///< 2 x 2
  CMatrix<Scalar> boson;  ///< N x N
};
}  // namespace state

template <typename Scalar>
using StateKind = std::variant<state::Fock, state::ExcitedFock, state::ThermalGround,
                               state::Product<Scalar>>;

namespace detail {

template <typename Scalar>
CMatrix<Scalar> product_projector(int qubit_index, int n, int fock_dim) {
  if (n < 0 || n >= fock_dim) {
    throw std::invalid_argument("Fock level outside the truncated space");
  }
  CMatrix<Scalar> qubit = CMatrix<Scalar>::Zero(2, 2);
  qubit(qubit_index, qubit_index) = 1;
  CMatrix<Scalar> boson = CMatrix<Scalar>::Zero(fock_dim, fock_dim);
  boson(n, n) = 1;
  return kron(qubit, boson);
}

template <typename Scalar>
struct StateBuilder {
  int fock_dim;

  CMatrix<Scalar> operator()(const state::Fock& s) const {
    return product_projector<Scalar>(kQubitGround, s.n, fock_dim);
  }
  CMatrix<Scalar> operator()(const state::ExcitedFock& s) const {
    return product_projector<Scalar>(kQubitExcited, s.n, fock_dim);
  }
  CMatrix<Scalar> operator()(const state::ThermalGround& s) const {
    CMatrix<Scalar> qubit = CMatrix<Scalar>::Zero(2, 2);
    qubit(kQubitGround, kQubitGround) = 1;
    return kron(qubit, thermal_boson<Scalar>(Scalar(s.n_th), fock_dim));
  }
  CMatrix<Scalar> operator()(const state::Product<Scalar>& s) const {
    if (s.qubit.rows() != 2 || s.qubit.cols() != 2 || s.boson.rows() != fock_dim ||
        s.boson.cols() != fock_dim) {
      throw std::invalid_argument("product factors have the wrong dimensions");
    }
    return kron(s.qubit, s.boson);
  }
};

}  // namespace detail

template <typename Scalar = double>
DensityMatrix<Scalar> make_state(const StateKind<Scalar>& kind, int fock_dim) {
  if (fock_dim < 2) throw std::invalid_argument("fock_dim must be at least 2");
  return DensityMatrix<Scalar>(std::visit(detail::StateBuilder<Scalar>{fock_dim}, kind));
}

/// tr(rho O).
template <typename Scalar, typename Derived>
std::complex<Scalar> expectation(const CMatrix<Scalar>& rho,
                                 const Eigen::MatrixBase<Derived>& op) {
  if (rho.rows() != op.rows() || rho.cols() != op.cols()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  // tr(rho O) = sum_ij rho_ij O_ji
  return (rho.transpose().array() * op.array()).sum();
}

template <typename Scalar, typename Derived>
std::complex<Scalar> expectation(const DensityMatrix<Scalar>& rho,
                                 const Eigen::MatrixBase<Derived>& op) {
  return expectation(rho.matrix(), op);
}

/// Reduced qubit state tr_boson(rho).
template <typename Scalar>
CMatrix<Scalar> trace_out_boson(const CMatrix<Scalar>& rho, int fock_dim) {
  if (rho.rows() != 2 * fock_dim) throw std::invalid_argument("trace_out_boson: dimension");
  CMatrix<Scalar> out(2, 2);
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      out(p, q) = rho.block(p * fock_dim, q * fock_dim, fock_dim, fock_dim).trace();
    }
  }
  return out;
}

/// Reduced mechanical state tr_qubit(rho).
template <typename Scalar>
CMatrix<Scalar> trace_out_qubit(const CMatrix<Scalar>& rho, int fock_dim) {
  if (rho.rows() != 2 * fock_dim) throw std::invalid_argument("trace_out_qubit: dimension");
  return rho.block(0, 0, fock_dim, fock_dim) + rho.block(fock_dim, fock_dim, fock_dim, fock_dim);
}

/// <psi|rho|psi> clamped to [0, 1].
template <typename Scalar>
Scalar fidelity(const CMatrix<Scalar>& rho, const CVector<Scalar>& target) {
  if (rho.rows() != target.size() || rho.cols() != target.size()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  if (std::abs(target.norm() - Scalar(1)) > Scalar(1e-9)) {
    throw std::invalid_argument("fidelity: target state is not normalized");
  }
  const Scalar f = (target.adjoint() * rho * target)(0, 0).real();
  return std::clamp(f, Scalar(0), Scalar(1));
}

template <typename Scalar>
Scalar fidelity(const DensityMatrix<Scalar>& rho, const CVector<Scalar>& target) {
  return fidelity(rho.matrix(), target);
}

}  // namespace x2mon
