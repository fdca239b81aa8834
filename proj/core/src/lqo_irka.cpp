// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>

#include <Eigen/LU>

#include "parallel.hpp"
#include "qoreduce/errors.hpp"
#include "qoreduce/interpolation.hpp"
#include "qoreduce/pencil_eigen.hpp"
#include "qoreduce/shifted_solver.hpp"

namespace qoreduce {

namespace {

constexpr double kShiftNudge = 1e-8;

bool ConjugateClosed(const std::vector<Complex>& poles) {
  const double scale = std::accumulate(poles.begin(), poles.end(), 0.0,
                                       [](double m, Complex z) { return std::max(m, std::abs(z)); });
  const double tol = 1e-10 * std::max(scale, 1.0);
  std::vector<bool> used(poles.size(), false);
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (used[i]) continue;
    if (std::abs(poles[i].imag()) <= tol) {
      used[i] = true;
      continue;
    }
    bool found = false;
    for (std::size_t j = i + 1; j < poles.size() && !found; ++j) {
      if (!used[j] && std::abs(poles[j] - std::conj(poles[i])) <= tol) {
        used[i] = used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

// Factors K(s); on a singular pencil the shift is nudged once.
ShiftedSolver FactorShift(const QuadraticOutputSystem& sys, Complex s, std::string* warning) {
  try {
    return ShiftedSolver(sys.E(), sys.A(), s);
  } catch (const SingularPencilError&) {
    const Complex nudged = s + kShiftNudge * std::max(std::abs(s), 1.0);
    *warning = "shift " + FormatComplex(s) + " hit the spectrum, moved to " + FormatComplex(nudged);
    return ShiftedSolver(sys.E(), sys.A(), nudged);
  }
}

DenseMatrix Realify(const DenseMatrix& m) {
  DenseMatrix out(m.rows(), 2 * m.cols());
  out.leftCols(m.cols()) = m.real().cast<Complex>();
  out.rightCols(m.cols()) = m.imag().cast<Complex>();
  return out;
}

}  // namespace

std::vector<Complex> IrkaState::MirroredShifts() const {
  std::vector<Complex> out;
  out.reserve(poles.size());
  for (Complex p : poles) out.push_back(-std::conj(p));
  return out;
}

std::vector<Complex> DefaultIrkaPoles(Index r, double omega_min, double omega_max, double delta) {
  if (r < 1) throw ConfigError("IRKA order must be positive");
  if (!(omega_min > 0.0) || !(omega_max >= omega_min)) {
    throw ConfigError("IRKA initial band needs 0 < omega_min <= omega_max");
  }
  if (!(delta > 0.0)) throw ConfigError("IRKA initial damping must be positive");
  const Index pairs = r / 2;
  std::vector<Complex> poles;
  poles.reserve(static_cast<std::size_t>(r));
  for (Index k = 0; k < pairs; ++k) {
    const double t = pairs == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(pairs - 1);
    const double omega = omega_min * std::pow(omega_max / omega_min, t);
    poles.emplace_back(-delta, omega);
    poles.emplace_back(-delta, -omega);
  }
  if (r % 2 == 1) poles.emplace_back(-delta * omega_min, 0.0);
  return poles;
}

IrkaResult LqoIrka(const QuadraticOutputSystem& sys, Index r, const std::vector<Complex>& init_poles,
                   const IrkaOptions& options) {
  const Index n = sys.dim();
  if (r < 1 || r > n) {
    throw ConfigError("IRKA order " + std::to_string(r) + " outside [1, " + std::to_string(n) + "]");
  }
  if (static_cast<Index>(init_poles.size()) != r) {
    throw ConfigError("IRKA needs exactly r initial poles");
  }
  for (std::size_t i = 0; i < init_poles.size(); ++i) {
    if (!(init_poles[i].real() < 0.0)) {
      throw ConfigError("IRKA initial pole " + FormatComplex(init_poles[i]) + " is not stable");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (init_poles[i] == init_poles[j]) throw ConfigError("IRKA initial poles must be distinct");
    }
  }
  if (options.max_iter < 1) throw ConfigError("IRKA max_iter must be positive");
  if (!(options.tol > 0.0)) throw ConfigError("IRKA tolerance must be positive");

  IrkaState state;
  state.real_basis = sys.is_real() && ConjugateClosed(init_poles);
  std::vector<Complex> poles = init_poles;
  DenseMatrix q = DenseMatrix::Identity(r, r);
  std::optional<ReducedModel> rom;

  for (int it = 1; it <= options.max_iter; ++it) {
    const std::size_t k = poles.size();
    const Index kk = static_cast<Index>(k);
    DenseMatrix X(n, kk);
    std::vector<ShiftedSolver> solvers;
    std::vector<std::string> nudges(k);
    solvers.reserve(k);
    for (std::size_t i = 0; i < k; ++i) solvers.push_back(FactorShift(sys, -poles[i], &nudges[i]));
    detail::ParallelFor(k, [&](std::size_t i) {
      X.col(static_cast<Index>(i)) = solvers[i].Solve(sys.b());
    });
    const DenseMatrix QX = sys.Q() * X;
    DenseMatrix Wc(n, kk);
    detail::ParallelFor(k, [&](std::size_t i) {
      const Index ii = static_cast<Index>(i);
      Wc.col(ii) = solvers[i].SolveTranspose(QX * q.row(ii).transpose());
    });
    for (auto& w : nudges) {
      if (!w.empty()) state.warnings.push_back("iteration " + std::to_string(it) + ": " + w);
    }

    const DenseMatrix Vraw = state.real_basis ? Realify(X) : X;
    const DenseMatrix Wraw = state.real_basis ? Realify(Wc) : Wc;
    BasisMatrix V = BasisMatrix::Normalize(Vraw, options.deflation_tol).Leading(kk);
    BasisMatrix W = BasisMatrix::Normalize(Wraw, options.deflation_tol).Leading(kk);
    EqualizeRanks(V, W, options.deflation_tol);
    const Index rank = V.cols();
    if (rank < kk) {
      state.warnings.push_back("iteration " + std::to_string(it) + ": basis rank dropped to " +
                               std::to_string(rank));
    }
    rom.emplace(Reduce(sys, V, W, "irka"));

    const PencilEigen eig = SolvePencil(rom->A(), rom->E(), true);
    for (Index j = 0; j < eig.alpha.size(); ++j) {
      if (!eig.is_finite(j)) throw NumericalError("IRKA reduced pencil has an infinite eigenvalue");
    }
    Eigen::VectorXcd lambda(rank);
    for (Index j = 0; j < rank; ++j) lambda(j) = eig.eigenvalue(j);
    DenseMatrix Xe = eig.right_vectors;
    // Scale eigenvectors so the modal input is all ones.
    Eigen::PartialPivLU<DenseMatrix> elu(rom->E());
    const Vector bt = Eigen::PartialPivLU<DenseMatrix>(Xe).solve(elu.solve(rom->b()));
    for (Index j = 0; j < rank; ++j) {
      if (std::abs(bt(j)) > 0.0) Xe.col(j) *= bt(j);
    }
    const DenseMatrix qn = Xe.transpose() * rom->Q() * Xe;

    // Match new poles to the previous ones.
    Eigen::MatrixXd cost(rank, kk);
    for (Index i = 0; i < rank; ++i) {
      for (Index j = 0; j < kk; ++j) cost(i, j) = std::abs(lambda(i) - poles[static_cast<std::size_t>(j)]);
    }
    const std::vector<Index> assign = MinCostAssignment(cost);
    std::vector<Index> order(static_cast<std::size_t>(rank));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
      return assign[static_cast<std::size_t>(a)] < assign[static_cast<std::size_t>(b)];
    });

    std::vector<Complex> next(static_cast<std::size_t>(rank));
    DenseMatrix qnext(rank, rank);
    double change = 0.0;
    for (Index a = 0; a < rank; ++a) {
      const Index src = order[static_cast<std::size_t>(a)];
      Complex lam = lambda(src);
      if (lam.real() > 0.0) lam = -std::conj(lam);
      if (state.real_basis && std::abs(lam.imag()) <= 1e-12 * std::abs(lam)) lam = Complex(lam.real(), 0.0);
      const Complex old = poles[static_cast<std::size_t>(assign[static_cast<std::size_t>(src)])];
      change = std::max(change, std::abs(lam - old) / std::abs(old));
      next[static_cast<std::size_t>(a)] = lam;
      for (Index b = 0; b < rank; ++b) qnext(a, b) = qn(src, order[static_cast<std::size_t>(b)]);
    }
    poles = std::move(next);
    q = std::move(qnext);
    state.pole_change.push_back(change);
    state.iterations = it;
    if (!std::isfinite(change)) throw NumericalError("IRKA pole update produced non-finite values");
    if (change < options.tol) {
      state.converged = true;
      break;
    }
  }

  state.poles = poles;
  state.modal_output = q;
  if (!state.converged) {
    std::ostringstream os;
    os << "IRKA did not converge in " << options.max_iter << " iterations (last relative pole change "
       << state.pole_change.back() << ")";
    state.warnings.push_back(os.str());
  }
  for (const auto& w : state.warnings) rom->AddWarning(w);
  return {std::move(*rom), std::move(state)};
}

}  // namespace qoreduce
