// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "qoreduce/errors.hpp"

namespace qoreduce {

namespace {

void CheckComparable(const SweepResult& full, const SweepResult& reduced) {
  if (full.grid_hz != reduced.grid_hz) throw ConfigError("full and reduced sweeps use different grids");
  if (!full.complete()) throw NumericalError("full sweep has missing points");
  if (!reduced.complete()) throw NumericalError("reduced sweep has missing points");
}

}  // namespace

PointwiseError PointwiseRelativeError(const SweepResult& full, const SweepResult& reduced) {
  CheckComparable(full, reduced);
  PointwiseError out;
  out.values.reserve(full.size());
  out.absolute.reserve(full.size());
  for (std::size_t i = 0; i < full.size(); ++i) {
    const double denom = std::abs(*full.values[i]);
    const double diff = std::abs(*full.values[i] - *reduced.values[i]);
    out.absolute.push_back(denom == 0.0);
    out.values.push_back(denom == 0.0 ? diff : diff / denom);
  }
  return out;
}

double H2ApproxRelativeError(const SweepResult& full, const SweepResult& reduced) {
  CheckComparable(full, reduced);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    num += std::abs(*full.values[i] - *reduced.values[i]);
    den += std::abs(*full.values[i]);
  }
  if (!(den > 0.0)) throw NumericalError("full transfer function vanishes on the metric grid");
  return num / den;
}

double HinfRelativeError(const SweepResult& full, const SweepResult& reduced) {
  CheckComparable(full, reduced);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < full.size(); ++i) {
    num = std::max(num, std::abs(*full.values[i] - *reduced.values[i]));
    den = std::max(den, std::abs(*full.values[i]));
  }
  if (!(den > 0.0)) throw NumericalError("full transfer function vanishes on the metric grid");
  return num / den;
}

ErrorReport MakeErrorReport(const SweepResult& full, const SweepResult& reduced, std::string method,
                            Index order) {
  ErrorReport report;
  report.grid_hz = full.grid_hz;
  report.pointwise = PointwiseRelativeError(full, reduced);
  report.h2_relerr = H2ApproxRelativeError(full, reduced);
  report.hinf_relerr = HinfRelativeError(full, reduced);
  report.method = std::move(method);
  report.order = order;
  return report;
}

}  // namespace qoreduce
