// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "qoreduce/errors.hpp"
#include "qoreduce/pencil_eigen.hpp"

// Eigen has no complex generalized eigensolver; use LAPACK.
extern "C" {
void zggev_(const char* jobvl, const char* jobvr, const int* n, std::complex<double>* a,
            const int* lda, std::complex<double>* b, const int* ldb, std::complex<double>* alpha,
            std::complex<double>* beta, std::complex<double>* vl, const int* ldvl,
            std::complex<double>* vr, const int* ldvr, std::complex<double>* work, const int* lwork,
            double* rwork, int* info);
}

namespace qoreduce {

bool PencilEigen::is_finite(Index j) const {
  return std::abs(beta(j)) > kInfiniteTol * std::abs(alpha(j)) && std::abs(beta(j)) > 0.0;
}

PencilEigen SolvePencil(const DenseMatrix& A, const DenseMatrix& E, bool want_vectors) {
  if (A.rows() != A.cols() || E.rows() != E.cols() || A.rows() != E.rows()) {
    throw ConfigError("generalized eigenproblem needs square matrices of equal size");
  }
  const int n = static_cast<int>(A.rows());
  PencilEigen out;
  out.alpha.resize(n);
  out.beta.resize(n);
  if (n == 0) return out;

  DenseMatrix a = A;
  DenseMatrix b = E;
  DenseMatrix vr(want_vectors ? n : 1, want_vectors ? n : 1);
  std::complex<double> vl_dummy;
  const int one = 1;
  const int ldvr = want_vectors ? n : 1;
  const char jobvl = 'N';
  const char jobvr = want_vectors ? 'V' : 'N';
  Eigen::VectorXd rwork(8 * n);
  int info = 0;

  int lwork = -1;
  std::complex<double> query;
  zggev_(&jobvl, &jobvr, &n, a.data(), &n, b.data(), &n, out.alpha.data(), out.beta.data(),
         &vl_dummy, &one, vr.data(), &ldvr, &query, &lwork, rwork.data(), &info);
  lwork = std::max(1, static_cast<int>(query.real()));
  Eigen::VectorXcd work(lwork);
  zggev_(&jobvl, &jobvr, &n, a.data(), &n, b.data(), &n, out.alpha.data(), out.beta.data(),
         &vl_dummy, &one, vr.data(), &ldvr, work.data(), &lwork, rwork.data(), &info);
  if (info != 0) {
    throw NumericalError("zggev failed with info = " + std::to_string(info));
  }
  if (want_vectors) out.right_vectors = std::move(vr);
  return out;
}

std::vector<Index> MinCostAssignment(const Eigen::MatrixXd& cost) {
  const Index n = cost.rows();
  const Index m = cost.cols();
  if (n > m) throw ConfigError("assignment needs rows <= cols");
  if (n == 0) return {};
  const double inf = std::numeric_limits<double>::infinity();
  // Potentials and matching, 1-based with a sentinel column 0.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<Index> match(m + 1, 0), way(m + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const Index i0 = match[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const Index j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<Index> assignment(n, -1);
  for (Index j = 1; j <= m; ++j) {
    if (match[j] != 0) assignment[match[j] - 1] = j - 1;
  }
  return assignment;
}

}  // namespace qoreduce
