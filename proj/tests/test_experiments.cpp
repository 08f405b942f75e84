// Copyright 2026 The rydcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "rydcz/experiments.hpp"

namespace rydcz {
namespace {

// 200 RK4 steps per us moves the Bell fidelity by < 1e-9 against the default
// density at these parameters; property tests use it to stay fast.
EvolutionConfig fast_solver() {
  EvolutionConfig cfg;
  cfg.steps_per_unit_time = 200.0;
  return cfg;
}

TEST(Hadamard, ActsOnQubitLevelsOnly) {
  const SpaceSpec s(5);
  for (int n : {0, 1, 4}) {
    const PureState out = hadamard_atom(basis_state(AtomLevel::A0, n, s));
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(out[s.index(AtomLevel::A0, n)].real(), r, 1e-15);
    EXPECT_NEAR(out[s.index(AtomLevel::A1, n)].real(), r, 1e-15);
    const PureState out1 = hadamard_atom(basis_state(AtomLevel::A1, n, s));
    EXPECT_NEAR(out1[s.index(AtomLevel::A1, n)].real(), -r, 1e-15);
    const PureState r1 = basis_state(AtomLevel::R1, n, s);
    EXPECT_LT((hadamard_atom(r1).amplitudes() - r1.amplitudes()).norm(), 1e-15);
  }
}

TEST(Hadamard, InvolutionAndUnitarity) {
  const SpaceSpec s(3);
  const CMatrix u = hadamard_atom_unitary(s);
  EXPECT_LT(max_abs(u * u - CMatrix::Identity(s.total_dim(), s.total_dim())), 1e-12);
  EXPECT_LT(max_abs(u.adjoint() * u - CMatrix::Identity(s.total_dim(), s.total_dim())), 1e-12);
  const DensityMatrix rho = DensityMatrix::from_pure(bell_input_state(s));
  EXPECT_LT(max_abs(hadamard_atom(hadamard_atom(rho)).matrix() - rho.matrix()), 1e-12);
}

TEST(BellFidelity, IdealGateIsPerfect) {
  const BellResult r = bell_fidelity(SystemParams{}, EvolutionConfig{}, Decoherence::Off);
  EXPECT_NEAR(r.fidelity, 1.0, 1e-6);
}

// Expected values frozen from an independent implementation (dense master equation in
// Python, adaptive DOP853 at rtol 1e-10).
TEST(BellFidelity, MatchesIndependentIntegrator) {
  const BellResult r = bell_fidelity(SystemParams{});
  EXPECT_NEAR(r.fidelity, 0.948973460, 1e-7);
  EXPECT_NEAR(r.fidelity, fidelity_with_pure(r.rho_final, bell_target_state(r.rho_final.space())), 1e-12);
  EXPECT_LT(r.diagnostics.trace_error, 1e-7);
  EXPECT_LT(r.diagnostics.hermiticity_residue, 1e-8);
  EXPECT_GE(r.diagnostics.min_eigenvalue, -1e-6);
  EXPECT_TRUE(r.warnings.empty());

  SystemParams p;
  p.temperature = 0.040;
  EXPECT_NEAR(bell_fidelity(p, fast_solver()).fidelity, 0.950250363, 1e-7);
  EXPECT_NEAR(bell_fidelity(p.with_matched_coupling(kTwoPi * 2.0), fast_solver()).fidelity, 0.977766305, 1e-7);
  p = SystemParams{};
  p.q_factor = 1e6;
  EXPECT_NEAR(bell_fidelity(p, fast_solver()).fidelity, 0.989128975, 1e-7);
}

TEST(BellFidelity, Deterministic) {
  const BellResult a = bell_fidelity(SystemParams{}, fast_solver());
  const BellResult b = bell_fidelity(SystemParams{}, fast_solver());
  EXPECT_EQ(a.fidelity, b.fidelity);
  EXPECT_TRUE((a.rho_final.matrix().array() == b.rho_final.matrix().array()).all());
}

TEST(BellFidelity, ReducedDensityIsConverged) {
  const double fine = bell_fidelity(SystemParams{}).fidelity;
  EXPECT_NEAR(bell_fidelity(SystemParams{}, fast_solver()).fidelity, fine, 1e-9);
}

TEST(BellFidelity, RejectsInvalidParameters) {
  SystemParams p;
  p.tau1 = -1.0;
  EXPECT_THROW(bell_fidelity(p), ValidationError);
}

TEST(GaussHermite, ThreePointRule) {
  const QuadratureRule r = gauss_hermite(3);
  EXPECT_NEAR(r.nodes[0], -std::sqrt(1.5), 1e-14);
  EXPECT_EQ(r.nodes[1], 0.0);
  EXPECT_NEAR(r.nodes[2], std::sqrt(1.5), 1e-14);
  EXPECT_NEAR(r.weights[0], 1.0 / 6.0, 1e-14);
  EXPECT_NEAR(r.weights[1], 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(r.weights[2], 1.0 / 6.0, 1e-14);
}

TEST(GaussHermite, DegenerateRule) {
  const QuadratureRule r = gauss_hermite(1);
  ASSERT_EQ(r.nodes.size(), 1u);
  EXPECT_EQ(r.nodes[0], 0.0);
  EXPECT_EQ(r.weights[0], 1.0);
  EXPECT_THROW(gauss_hermite(0), ValidationError);
}

TEST(GaussHermite, MomentsAndSymmetry) {
  // E[X^(2k)] for X ~ N(0, 1/2) is (2k-1)!! / 2^k; odd moments vanish.
  for (std::size_t n : {5u, 11u, 21u}) {
    const QuadratureRule r = gauss_hermite(n);
    double total = 0.0;
    for (double w : r.weights) total += w;
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(r.nodes[i], -r.nodes[n - 1 - i]);
      EXPECT_GT(r.weights[i], 0.0);
      if (i > 0) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
    }
    double double_factorial = 1.0;
    for (std::size_t k = 0; 2 * k <= 2 * n - 1; ++k) {
      if (k > 0) double_factorial *= static_cast<double>(2 * k - 1);
      double even = 0.0, odd = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        even += r.weights[i] * std::pow(r.nodes[i], 2.0 * k);
        odd += r.weights[i] * std::pow(r.nodes[i], 2.0 * k + 1);
      }
      const double exact = double_factorial / std::pow(2.0, k);
      EXPECT_NEAR(even, exact, 1e-8 * std::max(1.0, exact)) << n << " " << k;
      EXPECT_NEAR(odd, 0.0, 1e-8 * std::max(1.0, exact));
    }
  }
}

TEST(PositionAveraging, DegenerateCases) {
  const SystemParams p;
  const double nominal = bell_fidelity(p, fast_solver()).fidelity;
  EXPECT_EQ(averaged_fidelity_position(p, {kTwoPi * 0.12, 0.0}, gauss_hermite(11), fast_solver()), nominal);
  EXPECT_EQ(averaged_fidelity_position(p, {0.0, 0.5}, gauss_hermite(11), fast_solver()), nominal);
  EXPECT_EQ(averaged_fidelity_position(p, {kTwoPi * 0.12, 0.3}, gauss_hermite(1), fast_solver()), nominal);
  EXPECT_THROW(averaged_fidelity_position(p, {1.0, -0.1}, gauss_hermite(3)), ValidationError);
}

TEST(PositionAveraging, WeakDegradationAndNodeConvergence) {
  const SystemParams p;
  const PositionNoise noise{kTwoPi * 0.12, 0.27};
  const double nominal = bell_fidelity(p, fast_solver()).fidelity;
  const double f11 = averaged_fidelity_position(p, noise, gauss_hermite(11), fast_solver());
  const double f21 = averaged_fidelity_position(p, noise, gauss_hermite(21), fast_solver());
  EXPECT_NEAR(f11, nominal, 0.01);
  EXPECT_LE(f11, nominal);
  EXPECT_NEAR(f11, f21, 1e-4);
}

TEST(PositionAveraging, CouplingMagnitude) {
  const SystemParams p;
  EXPECT_NEAR(displaced_coupling(p, 2.0, -10.0).g, std::abs(p.g - 20.0), 1e-15);
  EXPECT_NEAR(displaced_coupling(p, 2.0, 0.5).g, p.g + 1.0, 1e-15);
}

TEST(Sweep, MonotoneInTemperatureAndQ) {
  SweepSpec t;
  t.parameter = SweepParameter::Temperature;
  t.values = default_grid(SweepParameter::Temperature);
  t.solver = fast_solver();
  const SweepResult tr = sweep(t);
  ASSERT_EQ(tr.rows.size(), 20u);
  for (std::size_t i = 1; i < tr.rows.size(); ++i) EXPECT_GE(tr.rows[i - 1].result - tr.rows[i].result, -1e-9);

  SweepSpec q;
  q.parameter = SweepParameter::QFactor;
  q.values = default_grid(SweepParameter::QFactor);
  q.solver = fast_solver();
  const SweepResult qr = sweep(q);
  ASSERT_EQ(qr.rows.size(), 25u);
  for (std::size_t i = 1; i < qr.rows.size(); ++i) EXPECT_GE(qr.rows[i].result - qr.rows[i - 1].result, -1e-9);
  EXPECT_EQ(qr.failures(), 0u);
}

TEST(Sweep, FailingRowDoesNotStopTheSweep) {
  SweepSpec q;
  q.parameter = SweepParameter::QFactor;
  q.values = {2e5, 0.5, 1e6};
  q.solver = fast_solver();
  const SweepResult r = sweep(q);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_TRUE(r.rows[0].ok());
  EXPECT_FALSE(r.rows[1].ok());
  EXPECT_TRUE(std::isnan(r.rows[1].result));
  EXPECT_TRUE(r.rows[2].ok());
  EXPECT_EQ(r.rows[1].value, 0.5);
  EXPECT_EQ(r.failures(), 1u);
  EXPECT_NEAR(r.rows[0].result, 0.948973460, 1e-7);
}

TEST(Sweep, EpsilonRowsAreRobustnessErrors) {
  SweepSpec e;
  e.parameter = SweepParameter::Epsilon;
  e.protocol = ProtocolKind::ThreeStep;
  e.values = {-0.2, 0.0, 0.1};
  const SweepResult r = sweep(e);
  for (const SweepRow& row : r.rows) {
    EXPECT_NEAR(row.result, std::pow(std::sin(kPi * row.value), 2), 1e-9);
  }
}

TEST(Sweep, RejectsBadSpecs) {
  SweepSpec s;
  EXPECT_THROW(sweep(s), ValidationError);
  s.values = {1e5, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(sweep(s), ValidationError);
}

TEST(Sweep, DefaultGrids) {
  const auto q = default_grid(SweepParameter::QFactor);
  EXPECT_EQ(q.size(), 25u);
  EXPECT_EQ(q.front(), 1e5);
  EXPECT_EQ(q.back(), 2e6);
  const auto t = default_grid(SweepParameter::Temperature);
  EXPECT_EQ(t.size(), 20u);
  EXPECT_NEAR(t.front(), 0.010, 1e-15);
  EXPECT_NEAR(t.back(), 0.100, 1e-15);
  EXPECT_EQ(default_grid(SweepParameter::Sigma).size(), 21u);
  const auto e = default_grid(SweepParameter::Epsilon);
  EXPECT_EQ(e.size(), 41u);
  EXPECT_NEAR(e[20], 0.0, 1e-15);
}

}  // namespace
}  // namespace rydcz
