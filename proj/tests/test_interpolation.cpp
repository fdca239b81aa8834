// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "doctest.h"
#include "qoreduce/benchmark_model.hpp"
#include "qoreduce/errors.hpp"
#include "qoreduce/interpolation.hpp"
#include "qoreduce/metrics.hpp"
#include "qoreduce/transfer.hpp"
#include "test_support.hpp"

using namespace qoreduce;
using namespace qoreduce::testing;

TEST_CASE("Presample") {
  SUBCASE("default grid") {
    const auto om = DefaultPresampleOmegas();
    CHECK(om.size() == 250);
    CHECK(om.front() == 1.0);
    CHECK(om.back() == doctest::Approx(kTwoPi * 251.0));
  }
  SUBCASE("scalar single point") {
    const SampleBasis b = Presample(ScalarSystem(), {1.0}, true);
    REQUIRE(b.size() == 1);
    CHECK(std::abs(b.v_columns(0, 0) - Complex(0.5, -0.5)) < 1e-15);
    CHECK(std::abs((*b.w_columns)(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(b.tf_samples[0] - 0.5) < 1e-15);
  }
  SUBCASE("without w the samples are v^H Q v") {
    std::mt19937_64 rng(41);
    const auto sys = RandomSparseSystem(rng, 50);
    const SampleBasis with = Presample(sys, {0.5, 2.0, 9.0}, true);
    const SampleBasis without = Presample(sys, {0.5, 2.0, 9.0}, false);
    CHECK_FALSE(without.has_w());
    for (std::size_t j = 0; j < 3; ++j) CHECK(RelErr(with.tf_samples[j], without.tf_samples[j]) < 1e-12);
  }
  SUBCASE("samples agree with a sweep") {
    std::mt19937_64 rng(42);
    const auto sys = RandomSparseSystem(rng, 80);
    const std::vector<double> hz{0.1, 0.5, 1.0, 2.0};
    std::vector<double> om;
    for (double f : hz) om.push_back(kTwoPi * f);
    const SampleBasis b = Presample(sys, om, true);
    const SweepResult s = Sweep(sys, hz);
    for (std::size_t j = 0; j < hz.size(); ++j) CHECK(RelErr(*s.values[j], b.tf_samples[j]) <= 1e-10);
  }
  SUBCASE("singular points are dropped") {
    const SparseMatrix one = Sparse(DenseMatrix::Identity(1, 1));
    const QuadraticOutputSystem integrator(one, SparseMatrix(1, 1), Vector::Ones(1), one);
    const SampleBasis b = Presample(integrator, {0.0, 1.0}, true);
    CHECK(b.size() == 1);
    CHECK(b.omegas[0] == 1.0);
    CHECK(b.diagnostics.size() == 1);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(Presample(ScalarSystem(), {}, false), ConfigError);
    CHECK_THROWS_AS(Presample(ScalarSystem(), {1.0, 1.0}, false), ConfigError);
  }
}

TEST_CASE("GreedySelect") {
  SUBCASE("r equals the grid size interpolates everywhere") {
    std::mt19937_64 rng(43);
    const auto sys = RandomSparseSystem(rng, 40);
    const SampleBasis b = Presample(sys, {0.5, 3.0, 10.0}, true);
    for (bool petrov : {false, true}) {
      const GreedyResult g = GreedySelect(sys, b, 3, petrov);
      auto sorted = g.trace.selected;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == std::vector<Index>{0, 1, 2});
      for (Index j = 0; j < 3; ++j) {
        CHECK(RelErr(b.tf_samples[static_cast<std::size_t>(j)], g.rom.TransferOnAxis(b.omegas[static_cast<std::size_t>(j)])) <= 1e-8);
      }
    }
  }
  SUBCASE("scalar system") {
    const auto sys = ScalarSystem();
    const GreedyResult g = GreedySelect(sys, Presample(sys, {0.5, 1.0, 2.0}, true), 1, true);
    for (double w : {0.0, 0.3, 1.0, 10.0, 100.0}) {
      CHECK(std::abs(g.rom.TransferOnAxis(w) - TransferOnAxis(sys, w)) <= 1e-10);
    }
  }
  SUBCASE("self-consistency of the trace") {
    std::mt19937_64 rng(44);
    const auto sys = RandomSparseSystem(rng, 120);
    const SampleBasis b = Presample(sys, LinearGrid(0.1, 20.0, 60), true);
    const GreedyResult g = GreedySelect(sys, b, 8, true);
    CHECK(g.trace.selected.size() == 8);
    CHECK(g.trace.max_error.size() == 8);
    CHECK(g.trace.seconds.size() == 8);
    Index first = 0;
    for (Index j = 1; j < b.size(); ++j) {
      if (std::abs(b.tf_samples[static_cast<std::size_t>(j)]) > std::abs(b.tf_samples[static_cast<std::size_t>(first)])) first = j;
    }
    CHECK(g.trace.selected[0] == first);
    double grid_max = 0.0;
    for (Index j = 0; j < b.size(); ++j) {
      const auto u = static_cast<std::size_t>(j);
      grid_max = std::max(grid_max, std::abs(b.tf_samples[u] - g.rom.TransferOnAxis(b.omegas[u])));
    }
    CHECK(g.trace.max_error.back() == doctest::Approx(grid_max).epsilon(1e-9));
    for (Index j : g.trace.selected) {
      const auto u = static_cast<std::size_t>(j);
      CHECK(RelErr(b.tf_samples[u], g.rom.TransferOnAxis(b.omegas[u])) <= 1e-6);
    }
  }
  SUBCASE("errors") {
    const auto sys = ScalarSystem();
    const SampleBasis b = Presample(sys, {1.0, 2.0}, false);
    CHECK_THROWS_AS(GreedySelect(sys, b, 3, false), ConfigError);
    CHECK_THROWS_AS(GreedySelect(sys, b, 0, false), ConfigError);
    CHECK_THROWS_AS(GreedySelect(sys, b, 1, true), ConfigError);
  }
}

TEST_CASE("AveragedBasis") {
  std::mt19937_64 rng(45);
  const auto sys = RandomSparseSystem(rng, 60);
  SUBCASE("m = r keeps the whole span") {
    const SampleBasis b = Presample(sys, {0.2, 1.0, 4.0, 12.0}, true);
    for (bool petrov : {false, true}) {
      const AveragedResult a = AveragedBasis(sys, b, 4, petrov);
      CHECK(a.rom.order() == 4);
      const auto report = CheckInterpolation(sys, a.rom, b.omegas);
      for (const auto& p : report.points) CHECK(RelErr(p.value_full, p.value_reduced) <= 1e-8);
      if (petrov) {
        for (const auto& p : report.points) CHECK(RelErr(p.deriv_full, p.deriv_reduced) <= 1e-6);
      }
    }
  }
  SUBCASE("duplicate column is discarded") {
    SampleBasis b = Presample(sys, {0.2, 1.0, 4.0}, false);
    DenseMatrix cols(b.v_columns.rows(), 4);
    cols << b.v_columns, b.v_columns.col(1);
    b.v_columns = cols;
    b.omegas.push_back(1.0 + 1e-300);
    b.tf_samples.push_back(b.tf_samples[1]);
    const AveragedResult a = AveragedBasis(sys, b, 3, false);
    std::vector<Index> p = a.v_pivots;
    CHECK(std::count(p.begin(), p.end(), 0) == 1);
    CHECK(std::count(p.begin(), p.end(), 2) == 1);
    CHECK(std::count(p.begin(), p.end(), 1) + std::count(p.begin(), p.end(), 3) == 1);
    for (double w : {0.2, 1.0, 4.0}) {
      CHECK(RelErr(TransferOnAxis(sys, w), a.rom.TransferOnAxis(w)) <= 1e-8);
    }
  }
}

TEST_CASE("DefaultIrkaPoles") {
  const auto p = DefaultIrkaPoles(5, 1.0, 100.0);
  REQUIRE(p.size() == 5);
  CHECK(p[0] == Complex(-1.0, 1.0));
  CHECK(p[1] == Complex(-1.0, -1.0));
  CHECK(p[2].imag() == doctest::Approx(100.0));
  CHECK(p[4] == Complex(-1.0, 0.0));
  CHECK_THROWS_AS(DefaultIrkaPoles(0, 1.0, 2.0), ConfigError);
  CHECK_THROWS_AS(DefaultIrkaPoles(2, 0.0, 2.0), ConfigError);
}

TEST_CASE("LqoIrka") {
  SUBCASE("n = 1, r = 1") {
    const auto sys = ScalarSystem();
    const IrkaResult res = LqoIrka(sys, 1, {Complex(-3.0, 0.0)});
    CHECK(res.state.converged);
    CHECK(res.state.iterations <= 2);
    for (double w : {0.0, 1.0, 5.0}) CHECK(std::abs(res.rom.TransferOnAxis(w) - TransferOnAxis(sys, w)) < 1e-12);
  }
  SUBCASE("fixed point needs one iteration") {
    const auto sys = ScalarSystem();
    const IrkaResult res = LqoIrka(sys, 1, {Complex(-1.0, 0.0)});
    CHECK(res.state.converged);
    CHECK(res.state.iterations == 1);
    CHECK(res.state.pole_change.front() < 1e-6);
  }
  SUBCASE("r = n reproduces the full model") {
    std::mt19937_64 rng(46);
    const auto sys = RandomSymmetricSystem(rng, 6);
    const IrkaResult res = LqoIrka(sys, 6, {-0.1, -0.3, -1.0, -3.0, -10.0, -30.0});
    CHECK(res.state.converged);
    for (double w : {0.0, 0.5, 2.0}) CHECK(RelErr(TransferOnAxis(sys, w), res.rom.TransferOnAxis(w)) < 1e-8);
  }
  SUBCASE("random symmetric n = 50, r = 4") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 5; ++trial) {
      const auto sys = RandomSymmetricSystem(rng, 50);
      IrkaOptions opt;
      opt.tol = 1e-6;
      const IrkaResult res = LqoIrka(sys, 4, {-0.1, -0.1 * std::pow(100.0, 1.0 / 3), -0.1 * std::pow(100.0, 2.0 / 3), -10.0}, opt);
      CHECK(res.state.converged);
      CHECK(res.state.iterations <= 100);
      CHECK(res.state.real_basis);
      CHECK(BivariateMismatch(sys, res.rom, res.state.MirroredShifts()) <= 1e-6);
    }
  }
  SUBCASE("non-convergence is reported") {
    std::mt19937_64 rng(48);
    const auto sys = RandomSymmetricSystem(rng, 40);
    IrkaOptions opt;
    opt.max_iter = 1;
    opt.tol = 1e-14;
    const IrkaResult res = LqoIrka(sys, 4, {-50.0, -60.0, -70.0, -80.0}, opt);
    CHECK_FALSE(res.state.converged);
    CHECK(res.state.iterations == 1);
    CHECK_FALSE(res.rom.warnings().empty());
  }
  SUBCASE("invalid input") {
    const auto sys = ScalarSystem();
    CHECK_THROWS_AS(LqoIrka(sys, 2, {-1.0, -2.0}), ConfigError);
    CHECK_THROWS_AS(LqoIrka(sys, 1, {Complex(1.0, 0.0)}), ConfigError);
    CHECK_THROWS_AS(LqoIrka(sys, 1, {-1.0, -2.0}), ConfigError);
    std::mt19937_64 rng(49);
    const auto big = RandomSymmetricSystem(rng, 5);
    CHECK_THROWS_AS(LqoIrka(big, 2, {-1.0, -1.0}), ConfigError);
  }
}

TEST_CASE("bivariate Galerkin interpolation on a real system") {
  std::mt19937_64 rng(50);
  const auto sys = RandomSparseSystem(rng, 100);
  const std::vector<Complex> sigma{0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  DenseMatrix raw(100, 6);
  for (Index j = 0; j < 6; ++j) raw.col(j) = SolveState(sys, sigma[static_cast<std::size_t>(j)]);
  const ReducedModel rom = Reduce(sys, BasisMatrix::Normalize(raw));
  CHECK(BivariateMismatch(sys, rom, sigma) <= 1e-8);
}

TEST_CASE("greedy error decreases with budget on the benchmark") {
  BenchmarkSpec spec = BenchmarkSpec::Default();
  spec.chain_length = 500;
  const auto sys = LiftSecondOrder(GenerateBenchmark(spec));
  const SampleBasis b = Presample(sys, DefaultPresampleOmegas(), true);
  const GreedyResult g10 = GreedySelect(sys, b, 10, true);
  const GreedyResult g20 = GreedySelect(sys, b, 20, true);
  CHECK(g20.trace.max_error.back() < g10.trace.max_error.back());
  // The trace of the larger budget starts with the smaller run.
  for (std::size_t k = 0; k < 10; ++k) CHECK(g20.trace.selected[k] == g10.trace.selected[k]);
}
