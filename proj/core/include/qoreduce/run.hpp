// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qoreduce/benchmark_model.hpp"
#include "qoreduce/interpolation.hpp"
#include "qoreduce/metrics.hpp"
#include "qoreduce/system.hpp"

namespace qoreduce {

enum class Method { kIrka, kGreedyV, kGreedyVW, kAveragedV, kAveragedVW };

std::string MethodName(Method m);  // "irka", "greedy-v", ...
Method ParseMethod(const std::string& name);
std::vector<Method> AllMethods();

/// Where the full-order system comes from. Exactly one of the three must be
/// set. Paths are per matrix role.
struct SystemSource {
  std::optional<BenchmarkSpec> generator;
  std::map<std::string, std::filesystem::path> first_order;   // E, A, b, Q
  std::map<std::string, std::filesystem::path> second_order;  // M, D, K, g, C

  /// Reads a directory holding either E/A/b/Q.mtx or M/D/K/g/C.mtx.
  static SystemSource FromDirectory(const std::filesystem::path& dir);
};

/// count linearly equidistant points on [first, last].
struct GridSpec {
  std::size_t count = 0;
  double first = 0.0;
  double last = 0.0;
  std::vector<double> Points() const;
};

struct RunConfig {
  SystemSource source;
  std::vector<Method> methods;
  std::vector<Index> orders;
  GridSpec presample{250, 1.0, kTwoPi * 251.0};  // rad/s
  GridSpec metric{500, 0.0, 250.0};              // Hz
  double deflation_tol = kDefaultDeflationTol;
  IrkaOptions irka;
  std::filesystem::path output_dir;
  std::uint64_t seed = 0;

  void Validate() const;
};

/// Loads or generates the full system, lifting second-order data.
QuadraticOutputSystem LoadSystem(const SystemSource& source);

struct RunEntry {
  Method method;
  Index order = 0;       // requested
  Index rank = 0;        // achieved
  ErrorReport errors;
  std::vector<double> lagrange_omegas;  // rad/s, where H = H_r must hold
  std::vector<double> hermite_omegas;   // rad/s, where H' = H_r' must hold too
  std::vector<Complex> bivariate_points;  // IRKA mirrored shifts
  bool converged = true;
  int iterations = 0;
  double seconds = 0.0;
  std::vector<std::string> warnings;
  std::string directory;  // relative to the run directory
};

struct RunSummary {
  std::vector<RunEntry> entries;
  double presample_seconds = 0.0;
  double full_sweep_seconds = 0.0;
};

/// Executes every (method, order) pair and writes, below output_dir:
///   manifest.json, summary.csv, full_sweep.csv, system/ (first-order .mtx),
///   and per entry <method>_r<order>/{E,A,b,Q}.mtx, sweep.csv, errors.csv.
RunSummary Run(const RunConfig& config);

struct CheckOutcome {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckOutcome> checks;
  bool passed() const;
};

/// Re-loads a run directory and checks every recorded interpolation
/// condition against the stored reduced models.
VerifyReport VerifyRun(const std::filesystem::path& run_dir);

/// Closed-form checks on a system without a prior run: output identity,
/// derivative identity vs finite differences, and Lagrange/Hermite
/// interpolation of a small reduced model built at `omegas`.
VerifyReport VerifySystem(const QuadraticOutputSystem& sys, const std::vector<double>& omegas);

std::string ToJson(const VerifyReport& report);

}  // namespace qoreduce
