// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "qoreduce/errors.hpp"
#include "qoreduce/system.hpp"
#include "qoreduce/transfer.hpp"
#include "test_support.hpp"

using namespace qoreduce;
using namespace qoreduce::testing;

namespace {

Vector Vec(std::initializer_list<Complex> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (Complex z : v) out(i++) = z;
  return out;
}

}  // namespace

TEST_CASE("WeightMatrix squares moduli") {
  CHECK(DenseMatrix(WeightMatrix(RmsWeights(Vec({1.0, 2.0})))).isApprox(
      DenseMatrix(Eigen::Vector2cd(1.0, 4.0).asDiagonal())));
  const DenseMatrix zero = WeightMatrix(RmsWeights(Vec({0.0, 0.0, 0.0})));
  CHECK(zero.rows() == 3);
  CHECK(zero.isZero(0.0));
  const DenseMatrix c = WeightMatrix(RmsWeights(Vec({Complex(0, 1), Complex(1, -1)})));
  CHECK(std::abs(c(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(c(1, 1) - 2.0) < 1e-15);
}

TEST_CASE("OutputSelector keeps nonzero weights") {
  const DenseMatrix c = OutputSelector(RmsWeights(Vec({1.0, 0.0, 2.0})));
  DenseMatrix expect = DenseMatrix::Zero(2, 3);
  expect(0, 0) = 1.0;
  expect(1, 2) = 2.0;
  CHECK(c == expect);
  CHECK(DenseMatrix(OutputSelector(RmsWeights(Vec({1.0, 1.0, 1.0})))) == DenseMatrix::Identity(3, 3));
  CHECK_THROWS_AS(OutputSelector(RmsWeights(Vec({0.0, 0.0}))), ConfigError);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Vector w = RandomVector(rng, 6) + Complex(0, 1) * RandomVector(rng, 6);
    w(trial % 6) = 0.0;
    const RmsWeights weights(w);
    const SparseMatrix C = OutputSelector(weights);
    CHECK((DenseMatrix(SparseMatrix(C.adjoint()) * C) - DenseMatrix(WeightMatrix(weights))).norm() < 1e-14);
  }
}

TEST_CASE("ToQuadraticOutput forms C^H C") {
  const SparseMatrix I = Sparse(DenseMatrix::Identity(2, 2));
  const Vector b = Vector::Ones(2);
  CHECK(DenseMatrix(ToQuadraticOutput(LinearOutputSystem(I, -I, b, I)).Q()) == DenseMatrix::Identity(2, 2));
  const DenseMatrix row = DenseMatrix::Ones(1, 2);
  CHECK(DenseMatrix(ToQuadraticOutput(LinearOutputSystem(I, -I, b, Sparse(row))).Q()) == DenseMatrix::Ones(2, 2));

  std::mt19937_64 rng(3);
  const Index n = 5;
  const SparseMatrix In = Sparse(DenseMatrix::Identity(n, n));
  const DenseMatrix C = RandomReal(rng, 3, n);
  const DenseMatrix Q = ToQuadraticOutput(LinearOutputSystem(In, -In, Vector::Ones(n), Sparse(C))).Q();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(Q);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-12);
}

TEST_CASE("QuadraticOutputSystem validation") {
  const SparseMatrix one = Sparse(DenseMatrix::Identity(1, 1));
  SUBCASE("Q is symmetrized") {
    DenseMatrix q(2, 2);
    q << 1.0, 2.0, 0.0, 3.0;
    const SparseMatrix I = Sparse(DenseMatrix::Identity(2, 2));
    const QuadraticOutputSystem sys(I, -I, Vector::Ones(2), Sparse(q));
    CHECK(HermitianDefect(sys.Q()) == 0.0);
    CHECK(DenseMatrix(sys.Q())(0, 1) == Complex(1.0, 0.0));
    CHECK(sys.is_real());
  }
  SUBCASE("singular E is rejected") {
    const SparseMatrix zero(1, 1);
    CHECK_THROWS_AS(QuadraticOutputSystem(zero, -one, Vector::Ones(1), one), ConfigError);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(QuadraticOutputSystem(one, -one, Vector::Ones(2), one), ConfigError);
  }
  SUBCASE("complex data") {
    const QuadraticOutputSystem sys(one, Sparse(DenseMatrix::Constant(1, 1, Complex(-1, 1))), Vector::Ones(1), one);
    CHECK_FALSE(sys.is_real());
  }
}

TEST_CASE("LiftSecondOrder scalar oscillator") {
  const SparseMatrix one = Sparse(DenseMatrix::Identity(1, 1));
  const QuadraticOutputSystem sys = LiftSecondOrder(SecondOrderSystem(one, one, one, Vector::Ones(1), one));
  DenseMatrix E(2, 2), A(2, 2), Q(2, 2);
  E << 1, 0, 0, 1;
  A << 0, 1, -1, -1;
  Q << 1, 0, 0, 0;
  CHECK(DenseMatrix(sys.E()) == E);
  CHECK(DenseMatrix(sys.A()) == A);
  CHECK(DenseMatrix(sys.Q()) == Q);
  CHECK(sys.b() == Eigen::Vector2cd(0.0, 1.0));
  CHECK(std::abs(TransferFunction(sys, 0.0) - 1.0) < 1e-14);
}

TEST_CASE("LiftSecondOrder matches the second-order response") {
  std::mt19937_64 rng(11);
  const Index n = 8;
  DenseMatrix K = RandomReal(rng, n, n);
  K = K * K.transpose() + DenseMatrix::Identity(n, n);
  const DenseMatrix M = DenseMatrix::Identity(n, n) * 2.0;
  const DenseMatrix D = 0.1 * M + 0.01 * K;
  const DenseMatrix C = RandomReal(rng, 2, n);
  const Vector g = RandomVector(rng, n);
  const QuadraticOutputSystem sys = LiftSecondOrder(SecondOrderSystem(Sparse(M), Sparse(D), Sparse(K), g, Sparse(C)));
  CHECK(sys.dim() == 2 * n);
  for (Complex s : {Complex(0.0, 0.5), Complex(0.3, 2.0), Complex(1.0, 0.0)}) {
    const Vector z = C * (s * s * M + s * D + K).lu().solve(g);
    CHECK(RelErr(z.squaredNorm(), TransferFunction(sys, s)) < 1e-10);
  }
}

TEST_CASE("RmsValue") {
  CHECK(RmsValue(Vec({3.0, 4.0}), RmsWeights(Vec({1.0, 1.0}))) == doctest::Approx(5.0));
  CHECK(RmsValue(Vec({1.0, 1.0}), RmsWeights(Vec({1.0, 2.0}))) == doctest::Approx(std::sqrt(5.0)));
  const Vector x = Vec({0.5, Complex(1, 2)});
  CHECK(RmsValue(x, RmsWeights(Vec({1.0, 3.0}), x)) == 0.0);
  CHECK_THROWS_AS(RmsValue(Vec({1.0}), RmsWeights(Vec({1.0, 1.0}))), ConfigError);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector w = RandomVector(rng, 7) + Complex(0, 1) * RandomVector(rng, 7);
    const Vector s = RandomVector(rng, 7) + Complex(0, 1) * RandomVector(rng, 7);
    const RmsWeights weights(w);
    const double rms = RmsValue(s, weights);
    const Complex quad = s.dot(WeightMatrix(weights) * s);
    CHECK(std::abs(rms * rms - quad) / std::abs(quad) < 1e-12);
  }
}
