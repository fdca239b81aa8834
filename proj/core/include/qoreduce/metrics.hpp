// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "qoreduce/transfer.hpp"

namespace qoreduce {

/// Pointwise |H - H_r| / |H|. Where |H| == 0 the absolute error is stored
/// and the matching flag is set.
struct PointwiseError {
  std::vector<double> values;
  std::vector<bool> absolute;
};

PointwiseError PointwiseRelativeError(const SweepResult& full, const SweepResult& reduced);

/// sum |H - H_r| / sum |H| over the grid (plain sums of moduli, not a
/// root-sum-square). Reported as "h2_approx" in output files.
double H2ApproxRelativeError(const SweepResult& full, const SweepResult& reduced);

/// max |H - H_r| / max |H| over the grid.
double HinfRelativeError(const SweepResult& full, const SweepResult& reduced);

struct ErrorReport {
  std::vector<double> grid_hz;
  PointwiseError pointwise;
  double h2_relerr = 0.0;
  double hinf_relerr = 0.0;
  std::string method;
  Index order = 0;
};

ErrorReport MakeErrorReport(const SweepResult& full, const SweepResult& reduced,
                            std::string method, Index order);

}  // namespace qoreduce
