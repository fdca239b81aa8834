// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/projection.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "internal.hpp"
#include "parallel.hpp"
#include "qoreduce/errors.hpp"
#include "qoreduce/pencil_eigen.hpp"

namespace qoreduce {

namespace {

// Orthogonalizes the columns of `raw` against `basis` and each other, in
// order, with one re-orthogonalization pass. Columns whose residual norm is
// <= tol * reference are skipped.
void AppendOrthonormal(std::vector<Vector>& basis, std::vector<std::string>& origin,
                       const DenseMatrix& raw, const std::vector<std::string>& raw_origin,
                       double tol, double reference) {
  for (Index j = 0; j < raw.cols(); ++j) {
    Vector v = raw.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis) v -= q * q.dot(v);
    }
    const double norm = v.norm();
    if (!(norm > tol * reference)) continue;
    basis.push_back(v / norm);
    origin.push_back(static_cast<std::size_t>(j) < raw_origin.size() ? raw_origin[j]
                                                                      : "col" + std::to_string(j));
  }
}

DenseMatrix Stack(const std::vector<Vector>& cols, Index rows) {
  DenseMatrix m(rows, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Index>(j)) = cols[j];
  return m;
}

double MaxColumnNorm(const DenseMatrix& m) {
  return m.cols() == 0 ? 0.0 : m.colwise().norm().maxCoeff();
}

Eigen::PartialPivLU<DenseMatrix> FactorReduced(const ReducedModel& rom, Complex s) {
  Eigen::PartialPivLU<DenseMatrix> lu(s * rom.E() - rom.A());
  if (!(lu.rcond() >= 1e-14)) {
    throw SingularPencilError(s, "reduced pencil (order " + std::to_string(rom.order()) +
                                     ") has rcond " + std::to_string(lu.rcond()));
  }
  return lu;
}

}  // namespace

BasisMatrix::BasisMatrix(DenseMatrix columns, std::vector<std::string> origin)
    : columns_(std::move(columns)), origin_(std::move(origin)) {
  origin_.resize(static_cast<std::size_t>(columns_.cols()));
}

BasisMatrix BasisMatrix::Normalize(const DenseMatrix& raw, double tol,
                                   const std::vector<std::string>& origin) {
  if (raw.cols() == 0) throw ConfigError("cannot normalize a basis with no columns");
  std::vector<Vector> cols;
  std::vector<std::string> tags;
  AppendOrthonormal(cols, tags, raw, origin, tol, MaxColumnNorm(raw));
  if (cols.empty()) throw NumericalError("every basis column was deflated");
  return {Stack(cols, raw.rows()), std::move(tags)};
}

BasisMatrix BasisMatrix::Extended(const DenseMatrix& raw, double tol,
                                  const std::vector<std::string>& origin) const {
  if (!empty() && raw.rows() != rows()) throw ConfigError("basis row count mismatch in Extended");
  std::vector<Vector> acc;
  acc.reserve(static_cast<std::size_t>(cols() + raw.cols()));
  for (Index j = 0; j < columns_.cols(); ++j) acc.emplace_back(columns_.col(j));
  std::vector<std::string> tags = origin_;
  AppendOrthonormal(acc, tags, raw, origin, tol, MaxColumnNorm(raw));
  if (acc.empty()) throw NumericalError("every basis column was deflated");
  return {Stack(acc, raw.rows()), std::move(tags)};
}

BasisMatrix BasisMatrix::Leading(Index k) const {
  k = std::clamp<Index>(k, 0, cols());
  std::vector<std::string> tags(origin_.begin(), origin_.begin() + k);
  return {columns_.leftCols(k), std::move(tags)};
}

bool BasisMatrix::is_real() const { return columns_.imag().isZero(0.0); }

void EqualizeRanks(BasisMatrix& V, BasisMatrix& W, double tol) {
  if (V.cols() == W.cols()) return;
  BasisMatrix& small = V.cols() < W.cols() ? V : W;
  BasisMatrix& large = V.cols() < W.cols() ? W : V;
  BasisMatrix grown = small.Extended(large.matrix(), tol, large.origin()).Leading(large.cols());
  if (grown.cols() < large.cols()) large = large.Leading(grown.cols());
  small = std::move(grown);
}

ReducedModel::ReducedModel(DenseMatrix E, DenseMatrix A, Vector b, DenseMatrix Q, std::string method)
    : E_(std::move(E)), A_(std::move(A)), b_(std::move(b)), method_(std::move(method)) {
  const Index r = b_.size();
  if (r == 0) throw ConfigError("reduced model of order 0");
  if (E_.rows() != r || E_.cols() != r || A_.rows() != r || A_.cols() != r || Q.rows() != r ||
      Q.cols() != r) {
    throw ConfigError("reduced matrices are inconsistent with order " + std::to_string(r));
  }
  Q_ = (Q + Q.adjoint()) * 0.5;
  Eigen::PartialPivLU<DenseMatrix> lu(E_);
  if (!(lu.rcond() > 1e-14)) {
    warnings_.push_back("reduced E is singular or nearly so (rcond " + std::to_string(lu.rcond()) +
                        ")");
  }
}

void ReducedModel::SetBases(BasisMatrix V, BasisMatrix W) {
  V_ = std::move(V);
  W_ = std::move(W);
}

Complex ReducedModel::Transfer(Complex s) const {
  const Vector x = FactorReduced(*this, s).solve(b_);
  return x.dot(Q_ * x);
}

Complex ReducedModel::TransferOnAxis(double omega) const {
  const auto lu = FactorReduced(*this, AxisPoint(omega));
  const Vector v = lu.solve(b_);
  const Vector w = lu.adjoint().solve(Q_ * v);
  return b_.dot(w);
}

Complex ReducedModel::TransferDerivativeOnAxis(double omega) const {
  const auto lu = FactorReduced(*this, AxisPoint(omega));
  const Vector v = lu.solve(b_);
  const Vector w = lu.adjoint().solve(Q_ * v);
  const Vector ev = E_ * v;
  return ev.dot(w) - w.dot(ev);
}

Complex ReducedModel::Bivariate(Complex s1, Complex s2) const {
  const Vector x1 = FactorReduced(*this, s1).solve(b_);
  const Vector x2 = FactorReduced(*this, s2).solve(b_);
  return x1.transpose() * (Q_ * x2);
}

QuadraticOutputSystem ReducedModel::AsSystem() const {
  return {E_.sparseView(), A_.sparseView(), b_, Q_.sparseView()};
}

ReducedModel Reduce(const QuadraticOutputSystem& sys, const BasisMatrix& V, const BasisMatrix& W,
                    std::string method) {
  const Index n = sys.dim();
  if (V.empty() || W.empty()) throw ConfigError("projection bases must be nonempty");
  if (V.rows() != n || W.rows() != n) {
    std::ostringstream os;
    os << "basis rows (" << V.rows() << ", " << W.rows() << ") differ from system dimension " << n;
    throw ConfigError(os.str());
  }
  if (V.cols() != W.cols()) {
    std::ostringstream os;
    os << "V has " << V.cols() << " columns but W has " << W.cols();
    throw ConfigError(os.str());
  }
  if (V.cols() > n) throw ConfigError("reduced order exceeds the system dimension");
  const DenseMatrix& v = V.matrix();
  const DenseMatrix& w = W.matrix();
  DenseMatrix Er = w.adjoint() * (sys.E() * v);
  DenseMatrix Ar = w.adjoint() * (sys.A() * v);
  Vector br = w.adjoint() * sys.b();
  DenseMatrix Qr = v.adjoint() * (sys.Q() * v);
  ReducedModel rom(std::move(Er), std::move(Ar), std::move(br), std::move(Qr), std::move(method));
  rom.SetBases(V, W);
  return rom;
}

ReducedModel Reduce(const QuadraticOutputSystem& sys, const BasisMatrix& V, std::string method) {
  return Reduce(sys, V, V, std::move(method));
}

SweepResult Sweep(const ReducedModel& rom, const std::vector<double>& grid_hz) {
  detail::CheckGrid(grid_hz);
  const auto start = std::chrono::steady_clock::now();
  SweepResult result;
  result.grid_hz = grid_hz;
  result.values.resize(grid_hz.size());
  std::vector<std::string> failures(grid_hz.size());
  detail::ParallelFor(grid_hz.size(), [&](std::size_t i) {
    try {
      result.values[i] = rom.TransferOnAxis(kTwoPi * grid_hz[i]);
    } catch (const NumericalError& e) {
      failures[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (!failures[i].empty()) {
      result.diagnostics.push_back("f=" + std::to_string(grid_hz[i]) + " Hz: " + failures[i]);
    }
  }
  result.label = rom.method().empty() ? "reduced" : rom.method();
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

PoleSet ReducedPoles(const ReducedModel& rom) {
  const PencilEigen eig = SolvePencil(rom.A(), rom.E(), false);
  PoleSet out;
  for (Index j = 0; j < eig.alpha.size(); ++j) {
    if (eig.is_finite(j)) {
      out.poles.push_back(eig.eigenvalue(j));
    } else {
      ++out.infinite;
    }
  }
  std::sort(out.poles.begin(), out.poles.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

}  // namespace qoreduce
