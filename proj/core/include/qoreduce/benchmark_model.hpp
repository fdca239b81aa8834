// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "qoreduce/system.hpp"

namespace qoreduce {

/// Discrete mass-spring-damper absorber attached to one chain node.
struct Absorber {
  Index attachment = 0;
  double mass = 0.0;
  double stiffness = 0.0;
  double damping = 0.0;

  /// Absorber with natural frequency `freq_hz` and damping ratio `zeta`.
  static Absorber Tuned(Index attachment, double mass, double freq_hz, double zeta);
};

/// Fixed-fixed 1-D chain with Rayleigh damping and vibration absorbers.
struct BenchmarkSpec {
  Index chain_length = 500;
  double node_mass = 1e-2;
  double spring_stiffness = 5e5;
  // Optional relative jitter of each node mass and spring, uniform in
  // [-jitter, jitter], drawn from `seed`.
  double jitter = 0.0;
  std::uint64_t seed = 0;
  double alpha = 0.01;  // D = alpha*M + beta*K on the chain
  double beta = 1e-4;
  std::vector<Absorber> absorbers;
  Index load_index = 0;
  std::vector<Index> observed;    // empty: every chain node
  std::vector<double> weights;    // per observed node; empty: all ones

  /// The default synthetic test vehicle: 500 nodes, three absorbers tuned to
  /// 48 Hz at nodes N/4, N/2, 3N/4 and the load at N/3.
  static BenchmarkSpec Default();

  void Validate() const;
};

/// Builds M (diagonal), K (tridiagonal springs, both ends fixed) and
/// D = alpha*M + beta*K, then appends one degree of freedom per absorber.
/// g is the unit load at load_index; C selects the observed chain nodes.
SecondOrderSystem GenerateBenchmark(const BenchmarkSpec& spec);

}  // namespace qoreduce
