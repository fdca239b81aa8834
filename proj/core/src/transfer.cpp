// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/transfer.hpp"

#include <chrono>
#include <sstream>

#include "internal.hpp"
#include "parallel.hpp"
#include "qoreduce/errors.hpp"
#include "qoreduce/shifted_solver.hpp"

namespace qoreduce {

Vector SolveState(const QuadraticOutputSystem& sys, Complex s) {
  return ShiftedSolver(sys.E(), sys.A(), s).Solve(sys.b());
}

Complex TransferFunction(const QuadraticOutputSystem& sys, Complex s) {
  const Vector x = SolveState(sys, s);
  return x.dot(sys.Q() * x);
}

Complex TransferOnAxis(const QuadraticOutputSystem& sys, double omega) {
  // On iR, (zE - A)^H = -z E^H - A^H, so H = b^H w with w = K^{-H} Q K^{-1} b.
  const ShiftedSolver solver(sys.E(), sys.A(), AxisPoint(omega));
  const Vector v = solver.Solve(sys.b());
  const Vector w = solver.SolveAdjoint(sys.Q() * v);
  return sys.b().dot(w);
}

Complex TransferDerivativeOnAxis(const QuadraticOutputSystem& sys, double omega) {
  const ShiftedSolver solver(sys.E(), sys.A(), AxisPoint(omega));
  const Vector v = solver.Solve(sys.b());
  const Vector w = solver.SolveAdjoint(sys.Q() * v);
  // v^H E^H w - w^H E v
  const Vector ev = sys.E() * v;
  return ev.dot(w) - w.dot(ev);
}

Vector LinearTransferFunction(const LinearOutputSystem& sys, Complex s) {
  const Vector x = ShiftedSolver(sys.E(), sys.A(), s).Solve(sys.b());
  return sys.C() * x;
}

Complex BivariateTransferFunction(const QuadraticOutputSystem& sys, Complex s1, Complex s2) {
  const Vector x1 = ShiftedSolver(sys.E(), sys.A(), s1).Solve(sys.b());
  const Vector x2 = s1 == s2 ? x1 : ShiftedSolver(sys.E(), sys.A(), s2).Solve(sys.b());
  // x1^T Q x2, no conjugation.
  return x1.transpose() * (sys.Q() * x2);
}

bool SweepResult::complete() const {
  for (const auto& v : values) {
    if (!v) return false;
  }
  return values.size() == grid_hz.size();
}

std::vector<double> LinearGrid(double first, double last, std::size_t count) {
  if (count == 0) throw ConfigError("grid needs at least one point");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = first;
    return grid;
  }
  const double step = (last - first) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = first + step * static_cast<double>(i);
  grid.back() = last;
  return grid;
}

namespace detail {

void CheckGrid(const std::vector<double>& grid_hz) {
  if (grid_hz.empty()) throw ConfigError("sweep grid is empty");
  for (std::size_t i = 1; i < grid_hz.size(); ++i) {
    if (!(grid_hz[i] > grid_hz[i - 1])) {
      throw ConfigError("sweep grid must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

}  // namespace detail

SweepResult Sweep(const QuadraticOutputSystem& sys, const std::vector<double>& grid_hz) {
  detail::CheckGrid(grid_hz);
  const auto start = std::chrono::steady_clock::now();
  SweepResult result;
  result.grid_hz = grid_hz;
  result.values.resize(grid_hz.size());
  std::vector<std::string> failures(grid_hz.size());

  detail::ParallelFor(grid_hz.size(), [&](std::size_t i) {
    try {
      result.values[i] = TransferOnAxis(sys, kTwoPi * grid_hz[i]);
    } catch (const NumericalError& e) {
      failures[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i].empty()) {
      std::ostringstream os;
      os << "f=" << grid_hz[i] << " Hz: " << failures[i];
      result.diagnostics.push_back(os.str());
    }
  }
  result.label = "full";
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace qoreduce
