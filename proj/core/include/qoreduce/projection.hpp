// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "qoreduce/system.hpp"
#include "qoreduce/transfer.hpp"
#include "qoreduce/types.hpp"

namespace qoreduce {

inline constexpr double kDefaultDeflationTol = 1e-10;

/// Orthonormal n x r basis. `origin` holds one free-form provenance tag
/// per column, e.g. "v@omega=12.5".
class BasisMatrix {
 public:
  BasisMatrix() = default;
  BasisMatrix(DenseMatrix columns, std::vector<std::string> origin = {});

  /// Gram-Schmidt with one full re-orthogonalization pass. A column is
  /// dropped when its residual after projection onto the accepted columns is
  /// <= tol * (largest input column norm). Throws NumericalError when nothing
  /// survives.
  static BasisMatrix Normalize(const DenseMatrix& raw, double tol = kDefaultDeflationTol,
                               const std::vector<std::string>& origin = {});

  /// Appends the columns of `raw` that are not already in the span.
  BasisMatrix Extended(const DenseMatrix& raw, double tol = kDefaultDeflationTol,
                       const std::vector<std::string>& origin = {}) const;

  /// First k columns.
  BasisMatrix Leading(Index k) const;

  const DenseMatrix& matrix() const { return columns_; }
  const std::vector<std::string>& origin() const { return origin_; }
  Index rows() const { return columns_.rows(); }
  Index cols() const { return columns_.cols(); }
  bool empty() const { return columns_.cols() == 0; }

  /// True when every column has zero imaginary part.
  bool is_real() const;

 private:
  DenseMatrix columns_;
  std::vector<std::string> origin_;
};

/// Tops up the smaller of two bases with orthogonalized columns of the other
/// until both have the same column count; if the spans coincide, the larger
/// one is truncated instead.
void EqualizeRanks(BasisMatrix& V, BasisMatrix& W, double tol = kDefaultDeflationTol);

/// Projected quadratic-output model
///   E_r = W^H E V, A_r = W^H A V, b_r = W^H b, Q_r = V^H Q V.
class ReducedModel {
 public:
  ReducedModel(DenseMatrix E, DenseMatrix A, Vector b, DenseMatrix Q, std::string method = {});

  const DenseMatrix& E() const { return E_; }
  const DenseMatrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const DenseMatrix& Q() const { return Q_; }
  Index order() const { return b_.size(); }

  const std::string& method() const { return method_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void AddWarning(std::string w) { warnings_.push_back(std::move(w)); }

  // Set by Reduce(); empty for models built directly from matrices.
  const BasisMatrix& V() const { return V_; }
  const BasisMatrix& W() const { return W_; }
  void SetBases(BasisMatrix V, BasisMatrix W);

  Complex Transfer(Complex s) const;
  Complex TransferOnAxis(double omega) const;
  Complex TransferDerivativeOnAxis(double omega) const;
  Complex Bivariate(Complex s1, Complex s2) const;

  /// The reduced model as a (dense-backed) system.
  QuadraticOutputSystem AsSystem() const;

 private:
  DenseMatrix E_;
  DenseMatrix A_;
  Vector b_;
  DenseMatrix Q_;
  std::string method_;
  std::vector<std::string> warnings_;
  BasisMatrix V_;
  BasisMatrix W_;
};

/// Petrov-Galerkin projection. Pass the same basis twice for Galerkin.
/// Throws ConfigError on dimension mismatch; a singular E_r is attached as a
/// warning rather than an error.
ReducedModel Reduce(const QuadraticOutputSystem& sys, const BasisMatrix& V, const BasisMatrix& W,
                    std::string method = {});
ReducedModel Reduce(const QuadraticOutputSystem& sys, const BasisMatrix& V, std::string method = {});

/// Sweep of the reduced model on a Hz grid.
SweepResult Sweep(const ReducedModel& rom, const std::vector<double>& grid_hz);

/// Finite eigenvalues of lambda E_r - A_r, sorted by real part then
/// imaginary part. Infinite eigenvalues are counted in `infinite`.
struct PoleSet {
  std::vector<Complex> poles;
  Index infinite = 0;
};
PoleSet ReducedPoles(const ReducedModel& rom);

}  // namespace qoreduce
