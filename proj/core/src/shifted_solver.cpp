// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/shifted_solver.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include <Eigen/LU>
#include <Eigen/SparseLU>

#include "qoreduce/errors.hpp"

namespace qoreduce {

SingularPencilError::SingularPencilError(Complex shift, const std::string& what)
    : NumericalError("pencil sE - A is singular at s = " + FormatComplex(shift) + ": " + what),
      shift_(shift) {}

std::string FormatComplex(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.9g%+.9gi", z.real(), z.imag());
  return buf;
}

namespace {

using SparseLUSolver = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

double Norm1(const SparseMatrix& m) {
  double worst = 0.0;
  for (Index k = 0; k < m.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) col += std::abs(it.value());
    worst = std::max(worst, col);
  }
  return worst;
}

double NormInf(const SparseMatrix& m) {
  RealVector rows = RealVector::Zero(m.rows());
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) rows(it.row()) += std::abs(it.value());
  }
  return rows.size() ? rows.maxCoeff() : 0.0;
}

// Hager/Higham estimate of ||K^{-1}||_1 from solves with K and K^H.
template <typename SolveFn, typename AdjointFn>
double EstimateInverseNorm1(Index n, SolveFn&& solve, AdjointFn&& solve_adjoint) {
  Vector x = Vector::Constant(n, Complex(1.0 / static_cast<double>(n), 0.0));
  double estimate = 0.0;
  Index last = -1;
  for (int iter = 0; iter < 5; ++iter) {
    const Vector y = solve(x);
    const double norm_y = y.lpNorm<1>();
    if (iter > 0 && norm_y <= estimate) break;
    estimate = norm_y;
    Vector xi(n);
    for (Index i = 0; i < n; ++i) {
      const double mag = std::abs(y(i));
      xi(i) = mag > 0.0 ? y(i) / mag : Complex(1.0, 0.0);
    }
    const Vector z = solve_adjoint(xi);
    Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= std::real(z.dot(x)) || j == last) break;
    last = j;
    x.setZero();
    x(j) = Complex(1.0, 0.0);
  }
  // Second probe with an alternating vector guards against the power
  // iteration settling on a poor local maximum.
  Vector alt(n);
  for (Index i = 0; i < n; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    alt(i) = sign * (1.0 + static_cast<double>(i) / static_cast<double>(std::max<Index>(n - 1, 1)));
  }
  const double alt_est = 2.0 * Vector(solve(alt)).lpNorm<1>() / (3.0 * static_cast<double>(n));
  return std::max(estimate, alt_est);
}

}  // namespace

struct ShiftedSolver::Impl {
  std::optional<Eigen::PartialPivLU<DenseMatrix>> dense;
  mutable std::optional<SparseLUSolver> sparse;
};

ShiftedSolver::ShiftedSolver(const SparseMatrix& E, const SparseMatrix& A, Complex shift)
    : impl_(std::make_unique<Impl>()), shift_(shift) {
  if (E.rows() != A.rows() || E.cols() != A.cols() || E.rows() != E.cols()) {
    throw ConfigError("pencil matrices E and A must be square with equal dimensions");
  }
  pencil_ = shift * E - A;
  pencil_.makeCompressed();
  pencil_norm1_ = Norm1(pencil_);
  pencil_norm_inf_ = NormInf(pencil_);
  const Index n = pencil_.rows();

  if (n <= kDenseThreshold) {
    impl_->dense.emplace(DenseMatrix(pencil_));
    rcond_ = impl_->dense->rcond();
  } else {
    impl_->sparse.emplace();
    auto& lu = *impl_->sparse;
    lu.compute(pencil_);
    if (lu.info() != Eigen::Success) {
      throw SingularPencilError(shift, "sparse LU failed (" + lu.lastErrorMessage() + ")");
    }
    const double inv_norm = EstimateInverseNorm1(
        n, [&](const Vector& v) { return Vector(lu.solve(v)); },
        [&](const Vector& v) { return Vector(lu.adjoint().solve(v)); });
    rcond_ = (inv_norm > 0.0 && pencil_norm1_ > 0.0) ? 1.0 / (inv_norm * pencil_norm1_) : 0.0;
  }
  if (!std::isfinite(rcond_) || rcond_ < kMinRcond) {
    std::ostringstream os;
    os << "reciprocal condition estimate " << rcond_ << " below " << kMinRcond;
    throw SingularPencilError(shift, os.str());
  }
}

ShiftedSolver::~ShiftedSolver() = default;
ShiftedSolver::ShiftedSolver(ShiftedSolver&&) noexcept = default;
ShiftedSolver& ShiftedSolver::operator=(ShiftedSolver&&) noexcept = default;

Index ShiftedSolver::dim() const { return pencil_.rows(); }

Vector ShiftedSolver::Apply(const Vector& rhs, Op op) const {
  if (rhs.size() != dim()) {
    throw ConfigError("right-hand side has length " + std::to_string(rhs.size()) + ", expected " +
                      std::to_string(dim()));
  }
  Vector x;
  if (impl_->dense) {
    const auto& lu = *impl_->dense;
    switch (op) {
      case Op::kNone: x = lu.solve(rhs); break;
      case Op::kAdjoint: x = lu.adjoint().solve(rhs); break;
      case Op::kTranspose: x = lu.transpose().solve(rhs); break;
    }
  } else {
    auto& lu = *impl_->sparse;
    switch (op) {
      case Op::kNone: x = lu.solve(rhs); break;
      case Op::kAdjoint: x = lu.adjoint().solve(rhs); break;
      case Op::kTranspose: x = lu.transpose().solve(rhs); break;
    }
  }
  CheckBackwardError(x, rhs, op);
  return x;
}

void ShiftedSolver::CheckBackwardError(const Vector& x, const Vector& rhs, Op op) const {
  Vector residual;
  switch (op) {
    case Op::kNone: residual = pencil_ * x - rhs; break;
    case Op::kAdjoint: residual = pencil_.adjoint() * x - rhs; break;
    case Op::kTranspose: residual = pencil_.transpose() * x - rhs; break;
  }
  // ||K^H||_1 = ||K||_inf, so scale with the larger of the two norms.
  const double scale = std::max(pencil_norm1_, pencil_norm_inf_) * x.lpNorm<1>() + rhs.lpNorm<1>();
  const double r = residual.lpNorm<1>();
  if (!std::isfinite(r) || (scale > 0.0 && r > kMaxBackwardError * scale)) {
    std::ostringstream os;
    os << "solve backward error " << (scale > 0.0 ? r / scale : r) << " exceeds "
       << kMaxBackwardError;
    throw SingularPencilError(shift_, os.str());
  }
}

Vector ShiftedSolver::Solve(const Vector& rhs) const { return Apply(rhs, Op::kNone); }
Vector ShiftedSolver::SolveAdjoint(const Vector& rhs) const { return Apply(rhs, Op::kAdjoint); }
Vector ShiftedSolver::SolveTranspose(const Vector& rhs) const { return Apply(rhs, Op::kTranspose); }

}  // namespace qoreduce
