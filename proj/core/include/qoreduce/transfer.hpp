// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qoreduce/system.hpp"
#include "qoreduce/types.hpp"

namespace qoreduce {

/// x(s) = (sE - A)^{-1} b
Vector SolveState(const QuadraticOutputSystem& sys, Complex s);

/// H(s) = b^H (sE - A)^{-H} Q (sE - A)^{-1} b. Not analytic in s.
Complex TransferFunction(const QuadraticOutputSystem& sys, Complex s);

/// H on the imaginary axis at z = i*omega, evaluated in the form
/// b^H (-z E^H - A^H)^{-1} Q (z E - A)^{-1} b.
Complex TransferOnAxis(const QuadraticOutputSystem& sys, double omega);

/// dH/dz along the imaginary axis at z = i*omega, via
/// v^H E^H w - w^H E v with v = K^{-1} b and w = K^{-H} Q v.
Complex TransferDerivativeOnAxis(const QuadraticOutputSystem& sys, double omega);

/// G(s) = C (sE - A)^{-1} b
Vector LinearTransferFunction(const LinearOutputSystem& sys, Complex s);

/// Time-domain kernel H_t(s1, s2) = b^T (s1 E - A)^{-T} Q (s2 E - A)^{-1} b.
/// Uses plain transposes, also for complex data.
Complex BivariateTransferFunction(const QuadraticOutputSystem& sys, Complex s1, Complex s2);

/// One column of sampled transfer values over a frequency grid in Hz.
/// Missing entries mark points where the pencil could not be solved.
struct SweepResult {
  std::vector<double> grid_hz;
  std::vector<std::optional<Complex>> values;
  std::vector<std::string> diagnostics;
  std::string label;
  double seconds = 0.0;

  std::size_t size() const { return grid_hz.size(); }
  bool complete() const;
};

/// Linearly equidistant points first, ..., last (count >= 1).
std::vector<double> LinearGrid(double first, double last, std::size_t count);

/// Evaluates TransferOnAxis at omega = 2*pi*f for every f in grid_hz.
/// Points are independent and evaluated concurrently; singular points are
/// recorded as missing with a diagnostic and the sweep continues.
SweepResult Sweep(const QuadraticOutputSystem& sys, const std::vector<double>& grid_hz);

}  // namespace qoreduce
