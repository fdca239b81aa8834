// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>

#include "qoreduce/types.hpp"

namespace qoreduce {

/// LU factorization of the shifted pencil K(s) = sE - A for one fixed shift.
///
/// Pencils with dimension at most kDenseThreshold are factored densely,
/// larger ones with a sparse LU. Construction throws SingularPencilError when
/// the factorization breaks down or the reciprocal condition estimate drops
/// below kMinRcond. Every solve is checked against its normwise backward
/// error and throws SingularPencilError on breach.
///
/// Not thread-safe for concurrent use; create one per worker.
class ShiftedSolver {
 public:
  static constexpr double kMinRcond = 1e-14;
  static constexpr double kMaxBackwardError = 1e-10;

  ShiftedSolver(const SparseMatrix& E, const SparseMatrix& A, Complex shift);
  ~ShiftedSolver();
  ShiftedSolver(ShiftedSolver&&) noexcept;
  ShiftedSolver& operator=(ShiftedSolver&&) noexcept;

  /// K(s)^{-1} rhs
  Vector Solve(const Vector& rhs) const;
  /// K(s)^{-H} rhs
  Vector SolveAdjoint(const Vector& rhs) const;
  /// K(s)^{-T} rhs
  Vector SolveTranspose(const Vector& rhs) const;

  Complex shift() const { return shift_; }
  Index dim() const;
  /// Estimated reciprocal 1-norm condition number of K(s).
  double rcond() const { return rcond_; }

 private:
  enum class Op { kNone, kAdjoint, kTranspose };
  Vector Apply(const Vector& rhs, Op op) const;
  void CheckBackwardError(const Vector& x, const Vector& rhs, Op op) const;

  struct Impl;
  std::unique_ptr<Impl> impl_;
  SparseMatrix pencil_;
  double pencil_norm1_ = 0.0;
  double pencil_norm_inf_ = 0.0;
  Complex shift_;
  double rcond_ = 0.0;
};

}  // namespace qoreduce
