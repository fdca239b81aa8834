// Copyright 2026 The qoreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "qoreduce/benchmark_model.hpp"

#include <cmath>
#include <random>
#include <set>

#include "qoreduce/errors.hpp"

namespace qoreduce {

using Triplet = Eigen::Triplet<Complex>;

Absorber Absorber::Tuned(Index attachment, double mass, double freq_hz, double zeta) {
  const double omega = kTwoPi * freq_hz;
  return {attachment, mass, mass * omega * omega, 2.0 * zeta * mass * omega};
}

BenchmarkSpec BenchmarkSpec::Default() {
  BenchmarkSpec spec;
  const Index n = spec.chain_length;
  for (Index at : {n / 4, n / 2, 3 * n / 4}) spec.absorbers.push_back(Absorber::Tuned(at, 0.1, 48.0, 0.05));
  spec.load_index = n / 3;
  return spec;
}

void BenchmarkSpec::Validate() const {
  if (chain_length < 1) throw ConfigError("chain length must be positive");
  if (!(node_mass > 0.0)) throw ConfigError("node mass must be positive");
  if (!(spring_stiffness > 0.0)) throw ConfigError("spring stiffness must be positive");
  if (!(jitter >= 0.0 && jitter < 1.0)) throw ConfigError("jitter must lie in [0, 1)");
  if (alpha < 0.0 || beta < 0.0) throw ConfigError("Rayleigh coefficients must be nonnegative");
  if (load_index < 0 || load_index >= chain_length) throw ConfigError("load index outside the chain");
  for (const auto& a : absorbers) {
    if (a.attachment < 0 || a.attachment >= chain_length) {
      throw ConfigError("absorber attachment " + std::to_string(a.attachment) + " outside the chain");
    }
    if (!(a.mass > 0.0) || a.stiffness < 0.0 || a.damping < 0.0) {
      throw ConfigError("absorber needs positive mass and nonnegative stiffness and damping");
    }
  }
  std::set<Index> seen;
  for (Index i : observed) {
    if (i < 0 || i >= chain_length) throw ConfigError("observed node " + std::to_string(i) + " outside the chain");
    if (!seen.insert(i).second) throw ConfigError("observed node " + std::to_string(i) + " listed twice");
  }
  const std::size_t n_obs = observed.empty() ? static_cast<std::size_t>(chain_length) : observed.size();
  if (!weights.empty() && weights.size() != n_obs) {
    throw ConfigError("expected " + std::to_string(n_obs) + " output weights, got " +
                      std::to_string(weights.size()));
  }
}

SecondOrderSystem GenerateBenchmark(const BenchmarkSpec& spec) {
  spec.Validate();
  const Index n = spec.chain_length;
  const Index total = n + static_cast<Index>(spec.absorbers.size());

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto perturb = [&](double v) { return spec.jitter > 0.0 ? v * (1.0 + spec.jitter * unit(rng)) : v; };

  std::vector<double> mass(static_cast<std::size_t>(n));
  for (auto& m : mass) m = perturb(spec.node_mass);
  // Spring i joins node i-1 and node i; springs 0 and n tie the ends to the walls.
  std::vector<double> spring(static_cast<std::size_t>(n + 1));
  for (auto& k : spring) k = perturb(spec.spring_stiffness);

  std::vector<Triplet> m_t, k_t, d_t;
  for (Index i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const double kii = spring[u] + spring[u + 1];
    m_t.emplace_back(i, i, mass[u]);
    k_t.emplace_back(i, i, kii);
    d_t.emplace_back(i, i, spec.alpha * mass[u] + spec.beta * kii);
    if (i + 1 < n) {
      const double kc = -spring[u + 1];
      k_t.emplace_back(i, i + 1, kc);
      k_t.emplace_back(i + 1, i, kc);
      d_t.emplace_back(i, i + 1, spec.beta * kc);
      d_t.emplace_back(i + 1, i, spec.beta * kc);
    }
  }
  for (std::size_t a = 0; a < spec.absorbers.size(); ++a) {
    const Absorber& ab = spec.absorbers[a];
    const Index j = n + static_cast<Index>(a);
    const Index at = ab.attachment;
    m_t.emplace_back(j, j, ab.mass);
    for (auto [list, v] : {std::pair{&k_t, ab.stiffness}, std::pair{&d_t, ab.damping}}) {
      list->emplace_back(at, at, v);
      list->emplace_back(j, j, v);
      list->emplace_back(at, j, -v);
      list->emplace_back(j, at, -v);
    }
  }

  SparseMatrix M(total, total), K(total, total), D(total, total);
  M.setFromTriplets(m_t.begin(), m_t.end());
  K.setFromTriplets(k_t.begin(), k_t.end());
  D.setFromTriplets(d_t.begin(), d_t.end());

  Vector g = Vector::Zero(total);
  g(spec.load_index) = 1.0;

  std::vector<Index> observed = spec.observed;
  if (observed.empty()) {
    observed.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) observed[static_cast<std::size_t>(i)] = i;
  }
  std::vector<Triplet> c_t;
  for (std::size_t r = 0; r < observed.size(); ++r) {
    const double w = spec.weights.empty() ? 1.0 : spec.weights[r];
    c_t.emplace_back(static_cast<Index>(r), observed[r], w);
  }
  SparseMatrix C(static_cast<Index>(observed.size()), total);
  C.setFromTriplets(c_t.begin(), c_t.end());

  return {std::move(M), std::move(D), std::move(K), std::move(g), std::move(C)};
}

}  // namespace qoreduce
