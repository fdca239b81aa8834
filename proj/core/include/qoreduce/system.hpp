// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qoreduce/types.hpp"

namespace qoreduce {

/// Frequency-domain system with quadratic output
///
///   (sE - A) x(s) = b u(s),   y(s)^2 = x(s)^H Q x(s).
///
/// Q is made exactly Hermitian on construction by replacing it with
/// (Q + Q^H) / 2. E must admit an LU factorization; a singular E is
/// rejected. Instances are immutable.
class QuadraticOutputSystem {
 public:
  QuadraticOutputSystem(SparseMatrix E, SparseMatrix A, Vector b, SparseMatrix Q);

  const SparseMatrix& E() const { return E_; }
  const SparseMatrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const SparseMatrix& Q() const { return Q_; }
  Index dim() const { return b_.size(); }

  /// True when every stored entry of E, A, b and Q has zero imaginary part.
  bool is_real() const { return is_real_; }

 private:
  SparseMatrix E_;
  SparseMatrix A_;
  Vector b_;
  SparseMatrix Q_;
  bool is_real_ = false;
};

/// Linear-output companion (sE - A) x = b u, z = C x with p outputs.
class LinearOutputSystem {
 public:
  LinearOutputSystem(SparseMatrix E, SparseMatrix A, Vector b, SparseMatrix C);

  const SparseMatrix& E() const { return E_; }
  const SparseMatrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const SparseMatrix& C() const { return C_; }
  Index dim() const { return b_.size(); }
  Index outputs() const { return C_.rows(); }

 private:
  SparseMatrix E_;
  SparseMatrix A_;
  Vector b_;
  SparseMatrix C_;
};

/// Structural model (s^2 M + s D + K) p(s) = g u(s), z = C p.
class SecondOrderSystem {
 public:
  SecondOrderSystem(SparseMatrix M, SparseMatrix D, SparseMatrix K, Vector g, SparseMatrix C);

  const SparseMatrix& M() const { return M_; }
  const SparseMatrix& D() const { return D_; }
  const SparseMatrix& K() const { return K_; }
  const Vector& g() const { return g_; }
  const SparseMatrix& C() const { return C_; }
  Index dim() const { return g_.size(); }

 private:
  SparseMatrix M_;
  SparseMatrix D_;
  SparseMatrix K_;
  Vector g_;
  SparseMatrix C_;
};

/// Per-coordinate weights q_k and reference state of the RMS measure
///   y = sqrt(sum_k |q_k|^2 |x_k - xref_k|^2).
struct RmsWeights {
  Vector weights;
  Vector reference;  // empty means the zero state

  explicit RmsWeights(Vector w) : weights(std::move(w)) {}
  RmsWeights(Vector w, Vector ref) : weights(std::move(w)), reference(std::move(ref)) {}

  Index size() const { return weights.size(); }
};

/// diag(|q_1|^2, ..., |q_n|^2).
SparseMatrix WeightMatrix(const RmsWeights& w);

/// Selector whose rows are q_i e_i^T for the nonzero weights, so that
/// C^H C == WeightMatrix(w). Throws ConfigError when every weight is zero.
SparseMatrix OutputSelector(const RmsWeights& w);

/// Quadratic-output system with Q = C^H C; ||G(s)||^2 equals its H(s).
QuadraticOutputSystem ToQuadraticOutput(const LinearOutputSystem& sys);

/// First-order lifting with state [p; s p]:
///   E = [I 0; 0 M], A = [0 I; -K -D], b = [0; g], Q = [C^H C 0; 0 0].
/// M is not factored here; a singular M surfaces at solve time.
QuadraticOutputSystem LiftSecondOrder(const SecondOrderSystem& sys);

/// RMS value of x against the weights and (optional) reference state.
double RmsValue(const Vector& x, const RmsWeights& w);

/// max |Q - Q^H| over the stored entries.
double HermitianDefect(const SparseMatrix& Q);

}  // namespace qoreduce
