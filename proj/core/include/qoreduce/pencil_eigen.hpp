// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "qoreduce/types.hpp"

namespace qoreduce {

/// Generalized eigendecomposition A x = lambda E x of a dense complex pencil
/// (LAPACK zggev). Eigenvalues come back as ratios alpha/beta.
struct PencilEigen {
  Eigen::VectorXcd alpha;
  Eigen::VectorXcd beta;
  DenseMatrix right_vectors;  // column j belongs to alpha(j)/beta(j)

  /// |beta| below this relative to |alpha| counts as infinite.
  static constexpr double kInfiniteTol = 1e-13;

  bool is_finite(Index j) const;
  Complex eigenvalue(Index j) const { return alpha(j) / beta(j); }
};

PencilEigen SolvePencil(const DenseMatrix& A, const DenseMatrix& E, bool want_vectors);

/// Minimum-cost assignment (Hungarian method). cost is rows x cols with
/// rows <= cols; returns for each row the assigned column.
std::vector<Index> MinCostAssignment(const Eigen::MatrixXd& cost);

}  // namespace qoreduce
