// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/system.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/SparseLU>

#include "qoreduce/errors.hpp"

namespace qoreduce {

namespace {

void RequireSquare(const SparseMatrix& m, Index n, const char* name) {
  if (m.rows() != n || m.cols() != n) {
    std::ostringstream os;
    os << name << " is " << m.rows() << "x" << m.cols() << ", expected " << n << "x" << n;
    throw ConfigError(os.str());
  }
}

bool AllReal(const SparseMatrix& m) {
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      if (it.value().imag() != 0.0) return false;
    }
  }
  return true;
}

// Throws when m has no usable LU factorization.
void RequireInvertible(const SparseMatrix& m, const char* name) {
  const Index n = m.rows();
  if (n <= kDenseThreshold) {
    Eigen::PartialPivLU<DenseMatrix> lu{DenseMatrix(m)};
    if (!(lu.rcond() > 1e-14)) {
      throw ConfigError(std::string(name) + " is singular (rcond " + std::to_string(lu.rcond()) + ")");
    }
    return;
  }
  SparseMatrix copy = m;
  copy.makeCompressed();
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(copy);
  if (lu.info() != Eigen::Success) {
    throw ConfigError(std::string(name) + " is singular: " + lu.lastErrorMessage());
  }
}

SparseMatrix Hermitianized(const SparseMatrix& Q) {
  SparseMatrix adj = Q.adjoint();
  SparseMatrix sym = (Q + adj) * Complex(0.5, 0.0);
  sym.prune(Complex(0.0, 0.0));
  sym.makeCompressed();
  return sym;
}

template <typename Fn>
void ForEachTriplet(const SparseMatrix& m, Fn&& fn) {
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) fn(it.row(), it.col(), it.value());
  }
}

}  // namespace

QuadraticOutputSystem::QuadraticOutputSystem(SparseMatrix E, SparseMatrix A, Vector b, SparseMatrix Q)
    : E_(std::move(E)), A_(std::move(A)), b_(std::move(b)) {
  const Index n = b_.size();
  if (n <= 0) throw ConfigError("quadratic-output system needs a nonempty input vector b");
  RequireSquare(E_, n, "E");
  RequireSquare(A_, n, "A");
  RequireSquare(Q, n, "Q");
  Q_ = Hermitianized(Q);
  E_.makeCompressed();
  A_.makeCompressed();
  RequireInvertible(E_, "E");
  is_real_ = AllReal(E_) && AllReal(A_) && AllReal(Q_) && b_.imag().isZero(0.0);
}

LinearOutputSystem::LinearOutputSystem(SparseMatrix E, SparseMatrix A, Vector b, SparseMatrix C)
    : E_(std::move(E)), A_(std::move(A)), b_(std::move(b)), C_(std::move(C)) {
  const Index n = b_.size();
  if (n <= 0) throw ConfigError("linear-output system needs a nonempty input vector b");
  RequireSquare(E_, n, "E");
  RequireSquare(A_, n, "A");
  if (C_.cols() != n || C_.rows() <= 0) {
    std::ostringstream os;
    os << "C is " << C_.rows() << "x" << C_.cols() << ", expected p x " << n << " with p >= 1";
    throw ConfigError(os.str());
  }
  E_.makeCompressed();
  A_.makeCompressed();
  C_.makeCompressed();
  RequireInvertible(E_, "E");
}

SecondOrderSystem::SecondOrderSystem(SparseMatrix M, SparseMatrix D, SparseMatrix K, Vector g,
                                     SparseMatrix C)
    : M_(std::move(M)), D_(std::move(D)), K_(std::move(K)), g_(std::move(g)), C_(std::move(C)) {
  const Index n = g_.size();
  if (n <= 0) throw ConfigError("second-order system needs a nonempty load vector g");
  RequireSquare(M_, n, "M");
  RequireSquare(D_, n, "D");
  RequireSquare(K_, n, "K");
  if (C_.cols() != n || C_.rows() <= 0) {
    std::ostringstream os;
    os << "C is " << C_.rows() << "x" << C_.cols() << ", expected p x " << n << " with p >= 1";
    throw ConfigError(os.str());
  }
  M_.makeCompressed();
  D_.makeCompressed();
  K_.makeCompressed();
  C_.makeCompressed();
  RequireInvertible(M_, "M");
}

SparseMatrix WeightMatrix(const RmsWeights& w) {
  const Index n = w.size();
  if (n == 0) throw ConfigError("RMS weights are empty");
  SparseMatrix Q(n, n);
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    const double q2 = std::norm(w.weights(k));
    if (q2 != 0.0) t.emplace_back(k, k, Complex(q2, 0.0));
  }
  Q.setFromTriplets(t.begin(), t.end());
  return Q;
}

SparseMatrix OutputSelector(const RmsWeights& w) {
  const Index n = w.size();
  if (n == 0) throw ConfigError("RMS weights are empty");
  std::vector<Eigen::Triplet<Complex>> t;
  Index row = 0;
  for (Index k = 0; k < n; ++k) {
    if (w.weights(k) != Complex(0.0, 0.0)) t.emplace_back(row++, k, w.weights(k));
  }
  if (row == 0) throw ConfigError("all RMS weights are zero; the output would be empty");
  SparseMatrix C(row, n);
  C.setFromTriplets(t.begin(), t.end());
  return C;
}

QuadraticOutputSystem ToQuadraticOutput(const LinearOutputSystem& sys) {
  SparseMatrix Q = sys.C().adjoint() * sys.C();
  return {sys.E(), sys.A(), sys.b(), std::move(Q)};
}

QuadraticOutputSystem LiftSecondOrder(const SecondOrderSystem& sys) {
  const Index m = sys.dim();
  const Index n = 2 * m;
  std::vector<Eigen::Triplet<Complex>> e, a, q;
  e.reserve(static_cast<std::size_t>(m + sys.M().nonZeros()));
  a.reserve(static_cast<std::size_t>(m + sys.K().nonZeros() + sys.D().nonZeros()));

  const Complex one(1.0, 0.0);
  for (Index i = 0; i < m; ++i) {
    e.emplace_back(i, i, one);
    a.emplace_back(i, m + i, one);
  }
  ForEachTriplet(sys.M(), [&](Index i, Index j, Complex v) { e.emplace_back(m + i, m + j, v); });
  ForEachTriplet(sys.K(), [&](Index i, Index j, Complex v) { a.emplace_back(m + i, j, -v); });
  ForEachTriplet(sys.D(), [&](Index i, Index j, Complex v) { a.emplace_back(m + i, m + j, -v); });
  const SparseMatrix gram = sys.C().adjoint() * sys.C();
  ForEachTriplet(gram, [&](Index i, Index j, Complex v) { q.emplace_back(i, j, v); });

  SparseMatrix E(n, n), A(n, n), Q(n, n);
  E.setFromTriplets(e.begin(), e.end());
  A.setFromTriplets(a.begin(), a.end());
  Q.setFromTriplets(q.begin(), q.end());
  Vector b = Vector::Zero(n);
  b.tail(m) = sys.g();
  return {std::move(E), std::move(A), std::move(b), std::move(Q)};
}

double RmsValue(const Vector& x, const RmsWeights& w) {
  if (x.size() != w.size()) {
    throw ConfigError("state has length " + std::to_string(x.size()) + " but weights have length " +
                      std::to_string(w.size()));
  }
  if (w.reference.size() != 0 && w.reference.size() != x.size()) {
    throw ConfigError("reference state has length " + std::to_string(w.reference.size()));
  }
  double sum = 0.0;
  for (Index k = 0; k < x.size(); ++k) {
    const Complex dev = w.reference.size() == 0 ? x(k) : x(k) - w.reference(k);
    sum += std::norm(w.weights(k)) * std::norm(dev);
  }
  return std::sqrt(sum);
}

double HermitianDefect(const SparseMatrix& Q) {
  const SparseMatrix diff = Q - SparseMatrix(Q.adjoint());
  double worst = 0.0;
  ForEachTriplet(diff, [&](Index, Index, Complex v) { worst = std::max(worst, std::abs(v)); });
  return worst;
}

}  // namespace qoreduce
