// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qoreduce/projection.hpp"
#include "qoreduce/system.hpp"
#include "qoreduce/types.hpp"

namespace qoreduce {

/// Solution vectors precomputed on imaginary-axis points z_j = i*omega_j:
///   v_j = (z_j E - A)^{-1} b
///   w_j = (z_j E - A)^{-H} Q v_j      (only when requested)
/// and the transfer samples H(z_j) = v_j^H Q v_j = b^H w_j.
struct SampleBasis {
  std::vector<double> omegas;  // rad/s, surviving points only
  DenseMatrix v_columns;
  std::optional<DenseMatrix> w_columns;
  std::vector<Complex> tf_samples;
  std::vector<std::string> diagnostics;  // one line per dropped point

  Index size() const { return static_cast<Index>(omegas.size()); }
  bool has_w() const { return w_columns.has_value(); }
};

/// 250 linearly equidistant points on [1, 2*pi*251] rad/s.
std::vector<double> DefaultPresampleOmegas();

/// Points are solved concurrently; a singular point is dropped with a
/// diagnostic. Throws ConfigError on an empty or repeated point list.
SampleBasis Presample(const QuadraticOutputSystem& sys, const std::vector<double>& omegas,
                      bool with_w);

struct GreedyTrace {
  std::vector<Index> selected;    // indices into SampleBasis::omegas, in order
  std::vector<double> max_error;  // max_j |H(z_j) - H_r(z_j)| after each step
  std::vector<double> seconds;    // wall time per step
};

struct GreedyResult {
  ReducedModel rom;
  GreedyTrace trace;
};

/// Greedy interpolation-point selection over the presampled grid. The first
/// point maximizes |H|, each further point maximizes the absolute error of
/// the current reduced model over the unselected points. With `petrov` the
/// left basis collects w-columns, otherwise W = V.
GreedyResult GreedySelect(const QuadraticOutputSystem& sys, const SampleBasis& basis, Index r,
                          bool petrov, double deflation_tol = kDefaultDeflationTol);

struct AveragedResult {
  ReducedModel rom;
  std::vector<Index> v_pivots;  // first r pivot columns of the v-block
  std::vector<Index> w_pivots;  // same for the w-block (petrov only)
};

/// Truncated presampled basis: V spans the first r pivot columns of a
/// column-pivoted QR of v_columns; with `petrov` W is built the same way
/// from w_columns with its own pivoting.
AveragedResult AveragedBasis(const QuadraticOutputSystem& sys, const SampleBasis& basis, Index r,
                             bool petrov, double deflation_tol = kDefaultDeflationTol);

struct IrkaOptions {
  double tol = 1e-6;
  int max_iter = 100;
  double deflation_tol = kDefaultDeflationTol;
};

struct IrkaState {
  std::vector<Complex> poles;
  DenseMatrix modal_output;       // Q_r in the scaled eigenvector basis
  int iterations = 0;
  bool converged = false;
  std::vector<double> pole_change;  // per iteration
  bool real_basis = false;
  std::vector<std::string> warnings;

  /// Interpolation points -conj(lambda_i) of the final poles.
  std::vector<Complex> MirroredShifts() const;
};

struct IrkaResult {
  ReducedModel rom;
  IrkaState state;
};

/// Conjugate pairs -delta +- i*omega with omega logarithmically spaced over
/// [omega_min, omega_max]; for odd r one extra real pole -delta*omega_min.
std::vector<Complex> DefaultIrkaPoles(Index r, double omega_min, double omega_max,
                                      double delta = 1.0);

/// Quadratic-output IRKA applied to the frequency-domain matrices.
/// Non-convergence is not an error; the last iterate is returned with
/// converged = false.
IrkaResult LqoIrka(const QuadraticOutputSystem& sys, Index r,
                   const std::vector<Complex>& init_poles, const IrkaOptions& options = {});

/// Per-point mismatches between a full and a reduced model on the axis.
struct InterpolationPoint {
  double omega = 0.0;
  Complex value_full;
  Complex value_reduced;
  Complex deriv_full;
  Complex deriv_reduced;
  double value_error = 0.0;  // |H - H_r| / max(1, |H|)
  double deriv_error = 0.0;  // |H' - H_r'| / max(1, |H'|)
};

struct InterpolationReport {
  std::vector<InterpolationPoint> points;
  double max_value_error() const;
  double max_deriv_error() const;
};

/// Lagrange and Hermite mismatches at the given frequencies (rad/s).
InterpolationReport CheckInterpolation(const QuadraticOutputSystem& sys, const ReducedModel& rom,
                                       const std::vector<double>& omegas);

enum class MismatchScale {
  kEntrywise,  // each pair divided by its own |H_t(s_i, s_j)|
  kNormwise,   // max pair difference divided by max |H_t(s_i, s_j)|
};

/// Mismatch of the bivariate kernels H_t(s1, s2) = b^T (s1 E - A)^{-T} Q (s2 E - A)^{-1} b
/// over all pairs of points.
double BivariateMismatch(const QuadraticOutputSystem& sys, const ReducedModel& rom,
                         const std::vector<Complex>& points,
                         MismatchScale scale = MismatchScale::kEntrywise);

}  // namespace qoreduce
