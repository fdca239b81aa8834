// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace qoreduce {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Systems at or below this state dimension are factored densely.
inline constexpr Index kDenseThreshold = 500;

inline Complex AxisPoint(double omega) { return {0.0, omega}; }

}  // namespace qoreduce
