// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/interpolation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <Eigen/QR>

#include "parallel.hpp"
#include "qoreduce/errors.hpp"
#include "qoreduce/shifted_solver.hpp"
#include "qoreduce/transfer.hpp"

namespace qoreduce {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string OmegaTag(char kind, double omega) {
  std::ostringstream os;
  os << kind << "@omega=" << omega;
  return os.str();
}

DenseMatrix SelectColumns(const DenseMatrix& m, const std::vector<Index>& idx) {
  DenseMatrix out(m.rows(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Index>(j)) = m.col(idx[j]);
  return out;
}

std::vector<std::string> SelectTags(const SampleBasis& basis, const std::vector<Index>& idx, char kind) {
  std::vector<std::string> tags;
  tags.reserve(idx.size());
  for (Index j : idx) tags.push_back(OmegaTag(kind, basis.omegas[static_cast<std::size_t>(j)]));
  return tags;
}

// |H(z_j) - H_r(z_j)| over the whole presampled grid; points where the
// reduced pencil is singular get +inf.
std::vector<double> GridErrors(const ReducedModel& rom, const SampleBasis& basis) {
  std::vector<double> err(static_cast<std::size_t>(basis.size()));
  detail::ParallelFor(err.size(), [&](std::size_t j) {
    try {
      err[j] = std::abs(basis.tf_samples[j] - rom.TransferOnAxis(basis.omegas[j]));
    } catch (const NumericalError&) {
      err[j] = std::numeric_limits<double>::infinity();
    }
  });
  return err;
}

struct AxisValues {
  Complex value;
  Complex deriv;
};

AxisValues FullAxisValues(const QuadraticOutputSystem& sys, double omega) {
  const ShiftedSolver solver(sys.E(), sys.A(), AxisPoint(omega));
  const Vector v = solver.Solve(sys.b());
  const Vector w = solver.SolveAdjoint(sys.Q() * v);
  const Vector ev = sys.E() * v;
  return {sys.b().dot(w), ev.dot(w) - w.dot(ev)};
}

}  // namespace

std::vector<double> DefaultPresampleOmegas() { return LinearGrid(1.0, kTwoPi * 251.0, 250); }

SampleBasis Presample(const QuadraticOutputSystem& sys, const std::vector<double>& omegas,
                      bool with_w) {
  if (omegas.empty()) throw ConfigError("presample needs at least one frequency");
  {
    std::set<double> seen;
    for (double w : omegas) {
      if (!seen.insert(w).second) {
        throw ConfigError("presample frequencies must be distinct (repeated " + std::to_string(w) + ")");
      }
    }
  }
  const Index n = sys.dim();
  const std::size_t m = omegas.size();
  DenseMatrix v_all(n, static_cast<Index>(m));
  DenseMatrix w_all(with_w ? n : 0, with_w ? static_cast<Index>(m) : 0);
  std::vector<Complex> tf(m);
  std::vector<std::string> failure(m);

  detail::ParallelFor(m, [&](std::size_t j) {
    try {
      const ShiftedSolver solver(sys.E(), sys.A(), AxisPoint(omegas[j]));
      const Vector v = solver.Solve(sys.b());
      const Vector qv = sys.Q() * v;
      v_all.col(static_cast<Index>(j)) = v;
      if (with_w) {
        const Vector w = solver.SolveAdjoint(qv);
        w_all.col(static_cast<Index>(j)) = w;
        tf[j] = sys.b().dot(w);
      } else {
        tf[j] = v.dot(qv);
      }
    } catch (const NumericalError& e) {
      failure[j] = e.what();
    }
  });

  SampleBasis out;
  std::vector<Index> keep;
  for (std::size_t j = 0; j < m; ++j) {
    if (failure[j].empty()) {
      keep.push_back(static_cast<Index>(j));
      out.omegas.push_back(omegas[j]);
      out.tf_samples.push_back(tf[j]);
    } else {
      out.diagnostics.push_back("omega=" + std::to_string(omegas[j]) + " dropped: " + failure[j]);
    }
  }
  if (keep.size() == m) {
    out.v_columns = std::move(v_all);
    if (with_w) out.w_columns = std::move(w_all);
  } else {
    out.v_columns = SelectColumns(v_all, keep);
    if (with_w) out.w_columns = SelectColumns(w_all, keep);
  }
  return out;
}

GreedyResult GreedySelect(const QuadraticOutputSystem& sys, const SampleBasis& basis, Index r,
                          bool petrov, double deflation_tol) {
  if (r < 1) throw ConfigError("greedy order must be positive");
  if (r > basis.size()) {
    throw ConfigError("greedy order " + std::to_string(r) + " exceeds the " +
                      std::to_string(basis.size()) + " available sample points");
  }
  if (petrov && !basis.has_w()) throw ConfigError("Petrov-Galerkin greedy needs presampled w-columns");
  if (basis.v_columns.rows() != sys.dim()) throw ConfigError("sample basis does not match the system");

  const std::string method = petrov ? "greedy-vw" : "greedy-v";
  GreedyTrace trace;

  Index first = 0;
  double peak = -1.0;
  for (Index j = 0; j < basis.size(); ++j) {
    const double mag = std::abs(basis.tf_samples[static_cast<std::size_t>(j)]);
    if (mag > peak) {
      peak = mag;
      first = j;
    }
  }
  if (!(peak > 0.0)) throw NumericalError("transfer function vanishes on the whole sample grid");
  trace.selected.push_back(first);

  while (true) {
    const auto start = Clock::now();
    BasisMatrix V = BasisMatrix::Normalize(SelectColumns(basis.v_columns, trace.selected), deflation_tol,
                                           SelectTags(basis, trace.selected, 'v'));
    BasisMatrix W = V;
    if (petrov) {
      W = BasisMatrix::Normalize(SelectColumns(*basis.w_columns, trace.selected), deflation_tol,
                                 SelectTags(basis, trace.selected, 'w'));
      EqualizeRanks(V, W, deflation_tol);
    }
    ReducedModel rom = Reduce(sys, V, W, method);
    std::vector<double> err = GridErrors(rom, basis);
    trace.max_error.push_back(*std::max_element(err.begin(), err.end()));

    if (static_cast<Index>(trace.selected.size()) == r) {
      trace.seconds.push_back(SecondsSince(start));
      if (V.cols() < r) {
        rom.AddWarning("basis deflated to rank " + std::to_string(V.cols()) + " < " + std::to_string(r));
      }
      return {std::move(rom), std::move(trace)};
    }
    for (Index j : trace.selected) err[static_cast<std::size_t>(j)] = -1.0;
    // Ties go to the lower index.
    const auto next = std::max_element(err.begin(), err.end());
    trace.selected.push_back(static_cast<Index>(next - err.begin()));
    trace.seconds.push_back(SecondsSince(start));
  }
}

AveragedResult AveragedBasis(const QuadraticOutputSystem& sys, const SampleBasis& basis, Index r,
                             bool petrov, double deflation_tol) {
  if (r < 1) throw ConfigError("order must be positive");
  if (r > basis.size()) {
    throw ConfigError("order " + std::to_string(r) + " exceeds the " + std::to_string(basis.size()) +
                      " presampled columns");
  }
  if (petrov && !basis.has_w()) throw ConfigError("Petrov-Galerkin averaging needs presampled w-columns");

  auto leading_pivots = [r](const DenseMatrix& m) {
    Eigen::ColPivHouseholderQR<DenseMatrix> qr(m);
    const auto& perm = qr.colsPermutation().indices();
    return std::vector<Index>(perm.data(), perm.data() + r);
  };

  std::vector<Index> v_pivots = leading_pivots(basis.v_columns);
  std::vector<Index> w_pivots;
  BasisMatrix V = BasisMatrix::Normalize(SelectColumns(basis.v_columns, v_pivots), deflation_tol,
                                         SelectTags(basis, v_pivots, 'v'));
  BasisMatrix W = V;
  if (petrov) {
    w_pivots = leading_pivots(*basis.w_columns);
    W = BasisMatrix::Normalize(SelectColumns(*basis.w_columns, w_pivots), deflation_tol,
                               SelectTags(basis, w_pivots, 'w'));
    EqualizeRanks(V, W, deflation_tol);
  }
  ReducedModel rom = Reduce(sys, V, W, petrov ? "avg-vw" : "avg-v");
  if (V.cols() < r) {
    rom.AddWarning("presampled basis has numerical rank " + std::to_string(V.cols()) + " < " +
                   std::to_string(r));
  }
  return {std::move(rom), std::move(v_pivots), std::move(w_pivots)};
}

double InterpolationReport::max_value_error() const {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, p.value_error);
  return m;
}

double InterpolationReport::max_deriv_error() const {
  double m = 0.0;
  for (const auto& p : points) m = std::max(m, p.deriv_error);
  return m;
}

InterpolationReport CheckInterpolation(const QuadraticOutputSystem& sys, const ReducedModel& rom,
                                       const std::vector<double>& omegas) {
  InterpolationReport report;
  report.points.resize(omegas.size());
  detail::ParallelFor(omegas.size(), [&](std::size_t i) {
    InterpolationPoint& p = report.points[i];
    p.omega = omegas[i];
    const AxisValues full = FullAxisValues(sys, omegas[i]);
    p.value_full = full.value;
    p.deriv_full = full.deriv;
    try {
      p.value_reduced = rom.TransferOnAxis(omegas[i]);
      p.deriv_reduced = rom.TransferDerivativeOnAxis(omegas[i]);
      p.value_error = std::abs(p.value_full - p.value_reduced) / std::max(1.0, std::abs(p.value_full));
      p.deriv_error = std::abs(p.deriv_full - p.deriv_reduced) / std::max(1.0, std::abs(p.deriv_full));
    } catch (const NumericalError&) {
      p.value_error = std::numeric_limits<double>::infinity();
      p.deriv_error = std::numeric_limits<double>::infinity();
    }
  });
  return report;
}

double BivariateMismatch(const QuadraticOutputSystem& sys, const ReducedModel& rom,
                         const std::vector<Complex>& points, MismatchScale scale) {
  const std::size_t k = points.size();
  std::vector<Vector> x(k);
  detail::ParallelFor(k, [&](std::size_t i) {
    x[i] = ShiftedSolver(sys.E(), sys.A(), points[i]).Solve(sys.b());
  });
  constexpr double kTiny = std::numeric_limits<double>::min();
  double worst = 0.0;
  double max_diff = 0.0;
  double max_full = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const Vector qxi = sys.Q().transpose() * x[i];
    for (std::size_t j = 0; j < k; ++j) {
      const Complex full = qxi.transpose() * x[j];
      const double diff = std::abs(full - rom.Bivariate(points[i], points[j]));
      worst = std::max(worst, diff / std::max(std::abs(full), kTiny));
      max_diff = std::max(max_diff, diff);
      max_full = std::max(max_full, std::abs(full));
    }
  }
  return scale == MismatchScale::kEntrywise ? worst : max_diff / std::max(max_full, kTiny);
}

}  // namespace qoreduce
