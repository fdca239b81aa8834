// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qoreduce/metrics.hpp"
#include "qoreduce/transfer.hpp"

namespace qoreduce {

/// Scientific notation, 17 significant digits, "C" locale.
std::string FormatDouble(double x);

/// Columns: omega_hz,full_re,full_im[,reduced_re,reduced_im,relerr].
/// Missing values are written as "nan".
void WriteSweepCsv(std::ostream& out, const SweepResult& full, const SweepResult* reduced);
void WriteSweepCsv(const std::filesystem::path& path, const SweepResult& full,
                   const SweepResult* reduced);

struct SweepTable {
  SweepResult full;
  std::optional<SweepResult> reduced;
};
SweepTable ReadSweepCsv(const std::filesystem::path& path);

/// Columns: method,order,h2_approx_relerr,hinf_relerr,points.
void WriteErrorReportCsv(std::ostream& out, const std::vector<ErrorReport>& reports);
void WriteErrorReportCsv(const std::filesystem::path& path, const std::vector<ErrorReport>& reports);

}  // namespace qoreduce
