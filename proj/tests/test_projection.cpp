// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "qoreduce/errors.hpp"
#include "qoreduce/interpolation.hpp"
#include "qoreduce/pencil_eigen.hpp"
#include "qoreduce/projection.hpp"
#include "qoreduce/shifted_solver.hpp"
#include "qoreduce/transfer.hpp"
#include "test_support.hpp"

using namespace qoreduce;
using namespace qoreduce::testing;

TEST_CASE("BasisMatrix::Normalize") {
  SUBCASE("duplicate columns deflate") {
    DenseMatrix raw = DenseMatrix::Zero(3, 2);
    raw(0, 0) = raw(0, 1) = 1.0;
    const BasisMatrix b = BasisMatrix::Normalize(raw);
    CHECK(b.cols() == 1);
  }
  SUBCASE("identity stays identity up to signs") {
    const BasisMatrix b = BasisMatrix::Normalize(DenseMatrix::Identity(4, 4));
    CHECK(b.matrix().cwiseAbs().isApprox(DenseMatrix::Identity(4, 4).cwiseAbs()));
  }
  SUBCASE("random full rank input") {
    std::mt19937_64 rng(31);
    const DenseMatrix raw = RandomReal(rng, 20, 5) + Complex(0, 1) * RandomReal(rng, 20, 5);
    const BasisMatrix b = BasisMatrix::Normalize(raw);
    REQUIRE(b.cols() == 5);
    const DenseMatrix& v = b.matrix();
    CHECK((v.adjoint() * v - DenseMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((v * (v.adjoint() * raw) - raw).cwiseAbs().maxCoeff() <= 1e-10 * raw.cwiseAbs().maxCoeff());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(BasisMatrix::Normalize(DenseMatrix(3, 0)), ConfigError);
    CHECK_THROWS_AS(BasisMatrix::Normalize(DenseMatrix::Zero(3, 2)), NumericalError);
  }
  SUBCASE("origin tags follow kept columns") {
    DenseMatrix raw = DenseMatrix::Zero(3, 3);
    raw(0, 0) = raw(0, 1) = 1.0;
    raw(1, 2) = 1.0;
    const BasisMatrix b = BasisMatrix::Normalize(raw, kDefaultDeflationTol, {"a", "b", "c"});
    CHECK(b.origin() == std::vector<std::string>{"a", "c"});
  }
}

TEST_CASE("EqualizeRanks") {
  std::mt19937_64 rng(32);
  const DenseMatrix a = RandomReal(rng, 10, 4);
  const DenseMatrix c = RandomReal(rng, 10, 2);
  SUBCASE("smaller basis is topped up") {
    BasisMatrix V = BasisMatrix::Normalize(a);
    BasisMatrix W = BasisMatrix::Normalize(c);
    const DenseMatrix w_before = W.matrix();
    EqualizeRanks(V, W);
    CHECK(V.cols() == 4);
    CHECK(W.cols() == 4);
    CHECK(W.matrix().leftCols(2).isApprox(w_before));
    CHECK((W.matrix().adjoint() * W.matrix() - DenseMatrix::Identity(4, 4)).norm() < 1e-12);
  }
  SUBCASE("equal ranks are left alone") {
    BasisMatrix V = BasisMatrix::Normalize(a.leftCols(2));
    BasisMatrix W = BasisMatrix::Normalize(c);
    const DenseMatrix v0 = V.matrix();
    const DenseMatrix w0 = W.matrix();
    EqualizeRanks(V, W);
    CHECK(V.matrix() == v0);
    CHECK(W.matrix() == w0);
  }
}

TEST_CASE("Reduce") {
  std::mt19937_64 rng(33);
  const auto sys = RandomDenseSystem(rng, 12);
  SUBCASE("identity bases reproduce the full model exactly") {
    const BasisMatrix I(DenseMatrix::Identity(12, 12));
    const ReducedModel rom = Reduce(sys, I);
    CHECK(rom.E() == DenseMatrix(sys.E()));
    CHECK(rom.A() == DenseMatrix(sys.A()));
    CHECK(rom.b() == sys.b());
    CHECK(rom.Q() == DenseMatrix(sys.Q()));
    for (double w : {0.0, 0.7, 3.0}) {
      CHECK(RelErr(TransferOnAxis(sys, w), rom.TransferOnAxis(w)) < 1e-12);
    }
    const InterpolationReport report = CheckInterpolation(sys, rom, {0.5, 1.5, 7.0});
    CHECK(report.max_value_error() < 1e-12);
    CHECK(report.max_deriv_error() < 1e-12);
  }
  SUBCASE("scalar") {
    const auto scalar = ScalarSystem();
    const BasisMatrix one(DenseMatrix::Identity(1, 1));
    const ReducedModel rom = Reduce(scalar, one);
    CHECK(std::abs(rom.TransferOnAxis(1.0) - 0.5) < 1e-15);
    CHECK(std::abs(rom.TransferDerivativeOnAxis(1.0) - Complex(0, 0.5)) < 1e-15);
  }
  SUBCASE("mismatched bases") {
    const BasisMatrix V = BasisMatrix::Normalize(RandomReal(rng, 12, 3));
    const BasisMatrix W = BasisMatrix::Normalize(RandomReal(rng, 12, 2));
    CHECK_THROWS_AS(Reduce(sys, V, W), ConfigError);
    const BasisMatrix short_rows = BasisMatrix::Normalize(RandomReal(rng, 5, 2));
    CHECK_THROWS_AS(Reduce(sys, short_rows), ConfigError);
  }
  SUBCASE("order zero is rejected") {
    CHECK_THROWS_AS(ReducedModel(DenseMatrix(0, 0), DenseMatrix(0, 0), Vector(0), DenseMatrix(0, 0)),
                    ConfigError);
  }
  SUBCASE("singular reduced E warns") {
    DenseMatrix E = DenseMatrix::Zero(1, 1);
    const ReducedModel rom(E, -DenseMatrix::Identity(1, 1), Vector::Ones(1), DenseMatrix::Identity(1, 1));
    CHECK(rom.warnings().size() == 1);
  }
}

TEST_CASE("Theorem 1 at z = i on a random n = 30 system") {
  std::mt19937_64 rng(34);
  const auto sys = RandomDenseSystem(rng, 30);
  const ShiftedSolver solver(sys.E(), sys.A(), AxisPoint(1.0));
  const Vector v = solver.Solve(sys.b());
  const Vector w = solver.SolveAdjoint(sys.Q() * v);
  const Vector extra = RandomVector(rng, 30);

  DenseMatrix vr(30, 2), wr(30, 2);
  vr << v, extra;
  wr << w, RandomVector(rng, 30);
  SUBCASE("Petrov-Galerkin: value and derivative") {
    const ReducedModel rom = Reduce(sys, BasisMatrix::Normalize(vr), BasisMatrix::Normalize(wr));
    const auto report = CheckInterpolation(sys, rom, {1.0});
    CHECK(report.max_value_error() <= 1e-8);
    CHECK(report.max_deriv_error() <= 1e-8);
  }
  SUBCASE("Galerkin: value only") {
    const ReducedModel rom = Reduce(sys, BasisMatrix::Normalize(vr));
    const auto report = CheckInterpolation(sys, rom, {1.0});
    CHECK(report.max_value_error() <= 1e-8);
  }
}

TEST_CASE("ReducedPoles") {
  const ReducedModel scalar(DenseMatrix::Identity(1, 1), -DenseMatrix::Identity(1, 1), Vector::Ones(1),
                            DenseMatrix::Identity(1, 1));
  const PoleSet p1 = ReducedPoles(scalar);
  REQUIRE(p1.poles.size() == 1);
  CHECK(std::abs(p1.poles[0] + 1.0) < 1e-14);

  DenseMatrix A = DenseMatrix::Zero(2, 2);
  A(0, 0) = -1.0;
  A(1, 1) = -2.0;
  const ReducedModel diag(DenseMatrix::Identity(2, 2), A, Vector::Ones(2), DenseMatrix::Identity(2, 2));
  const PoleSet p2 = ReducedPoles(diag);
  REQUIRE(p2.poles.size() == 2);
  CHECK(std::abs(p2.poles[0] + 2.0) < 1e-14);
  CHECK(std::abs(p2.poles[1] + 1.0) < 1e-14);

  const SparseMatrix one = Sparse(DenseMatrix::Identity(1, 1));
  const auto lifted = LiftSecondOrder(SecondOrderSystem(one, one, one, Vector::Ones(1), one));
  const ReducedModel osc = Reduce(lifted, BasisMatrix(DenseMatrix::Identity(2, 2)));
  const PoleSet p3 = ReducedPoles(osc);
  REQUIRE(p3.poles.size() == 2);
  CHECK(std::abs(p3.poles[0] - Complex(-0.5, -std::sqrt(3.0) / 2)) < 1e-12);
  CHECK(std::abs(p3.poles[1] - Complex(-0.5, std::sqrt(3.0) / 2)) < 1e-12);
}

TEST_CASE("MinCostAssignment") {
  Eigen::MatrixXd cost(3, 3);
  cost << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  const auto a = MinCostAssignment(cost);
  CHECK(a == std::vector<Index>{1, 0, 2});

  Eigen::MatrixXd rect(2, 4);
  rect << 9, 9, 1, 9, 9, 9, 9, 0.5;
  CHECK(MinCostAssignment(rect) == std::vector<Index>{2, 3});
}

TEST_CASE("reduced sweep") {
  const ReducedModel scalar(DenseMatrix::Identity(1, 1), -DenseMatrix::Identity(1, 1), Vector::Ones(1),
                            DenseMatrix::Identity(1, 1), "scalar");
  const SweepResult r = Sweep(scalar, {0.0, 1.0 / kTwoPi});
  REQUIRE(r.complete());
  CHECK(std::abs(*r.values[1] - 0.5) < 1e-15);
  CHECK(r.label == "scalar");
}
