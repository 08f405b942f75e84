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
#include <random>

#include "rydcz/protocols.hpp"
#include "test_support.hpp"

namespace rydcz {
namespace {

const double kEta = std::sqrt(6.0) / 2.0;

double angular_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

TEST(Schedules, OneStep) {
  SystemParams p;
  const GateSchedule s = one_step_schedule(p);
  ASSERT_EQ(s.stages.size(), 1u);
  EXPECT_TRUE(s.stages[0].laser_on);
  EXPECT_TRUE(s.stages[0].microwave_on);
  EXPECT_NEAR(s.total_duration(), 1.0, 1e-15);
  EXPECT_NEAR(s.total_duration(), std::sqrt(3.0) * kPi / p.g, 1e-14);
  p.omega_laser = 4.0 * kPi;
  EXPECT_NEAR(one_step_schedule(p).total_duration(), 0.5, 1e-15);
}

TEST(Schedules, ThreeStep) {
  SystemParams p;
  p.omega_laser = 2.0 * kPi;
  p.g = std::sqrt(3.0) * kPi;
  const GateSchedule s = three_step_schedule(p);
  ASSERT_EQ(s.stages.size(), 3u);
  EXPECT_NEAR(s.stages[0].duration, 0.5, 1e-15);
  EXPECT_NEAR(s.stages[1].duration, 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(s.stages[2].duration, 0.5, 1e-15);
  EXPECT_TRUE(s.stages[0].laser_on && !s.stages[0].microwave_on);
  EXPECT_TRUE(!s.stages[1].laser_on && s.stages[1].microwave_on);
  EXPECT_TRUE(s.stages[2].laser_on && !s.stages[2].microwave_on);
  EXPECT_NEAR(s.total_duration(), 2.0 * kPi / p.omega_laser + kPi / p.g, 1e-14);
  // Rescaling the coupling leaves the timing alone.
  const GateSchedule scaled = s.with_coupling_scale(1.2);
  EXPECT_EQ(scaled.stages[1].duration, s.stages[1].duration);
  EXPECT_EQ(scaled.stages[1].coupling_scale, 1.2);
}

TEST(H11, EigenvaluesAndTrace) {
  const double omega = 2.0 * kPi;
  const EigenSystem e0 = hermitian_eigs(h11_matrix(omega, 0.0));
  EXPECT_NEAR(e0.values[0], -omega / 2.0, 1e-12);
  EXPECT_NEAR(e0.values[1], 0.0, 1e-12);
  EXPECT_NEAR(e0.values[2], omega / 2.0, 1e-12);
  const EigenSystem e1 = hermitian_eigs(h11_matrix(omega, kEta));
  EXPECT_NEAR(e1.values[0], -omega, 1e-12);
  EXPECT_NEAR(e1.values[2], omega, 1e-12);
  for (double eta : {-2.0, -0.3, 0.0, 0.7, 5.0}) EXPECT_EQ(h11_matrix(omega, eta).trace(), Complex(0.0, 0.0));
}

TEST(EigensystemH11, ClosedFormAtCondition) {
  const H11Eigensystem e = eigensystem_h11(kEta);
  EXPECT_NEAR(e.normalizer, 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(e.epsilon_plus, 1.0, 1e-15);
  const H11Eigensystem z = eigensystem_h11(0.0);
  EXPECT_EQ(z.zero[2], Complex(0.0, 0.0));
  EXPECT_NEAR(z.zero[0].real(), -1.0 / std::sqrt(2.0), 1e-15);
}

TEST(EigensystemH11, DecompositionOfInputState) {
  for (double eta : {-1.3, 0.0, 0.4, kEta, 2.5}) {
    const H11Eigensystem e = eigensystem_h11(eta);
    CVector target = CVector::Zero(3);
    target[2] = 1.0;
    const CVector sum = (e.plus + e.minus + 2.0 * eta * e.zero) / e.normalizer;
    EXPECT_LT((sum - target).norm(), 1e-12) << eta;
  }
}

TEST(EigensystemH11, AgreesWithNumericEigensolver) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  const double omega = 2.0 * kPi;
  for (int trial = 0; trial < 100; ++trial) {
    const double eta = dist(rng);
    const CMatrix h = h11_matrix(omega, eta);
    const H11Eigensystem e = eigensystem_h11(eta);
    const EigenSystem num = hermitian_eigs(h);
    const double eps = e.epsilon_plus * omega;
    EXPECT_NEAR(num.values[0], -eps, 1e-10);
    EXPECT_NEAR(num.values[1], 0.0, 1e-10);
    EXPECT_NEAR(num.values[2], eps, 1e-10);
    EXPECT_LT((h * e.plus - eps * e.plus).norm(), 1e-10);
    EXPECT_LT((h * e.minus + eps * e.minus).norm(), 1e-10);
    EXPECT_LT((h * e.zero).norm(), 1e-10);
    EXPECT_NEAR(e.plus.norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(e.plus.dot(e.zero)), 0.0, 1e-12);
  }
}

TEST(Population11, Endpoints) {
  const double omega = 2.0 * kPi;
  const Population11 full = population_11_analytic(kEta, 2.0 * kPi / omega, omega);
  EXPECT_NEAR(full.population, 1.0, 1e-12);
  EXPECT_NEAR(full.amplitude.real(), 1.0, 1e-12);
  EXPECT_NEAR(population_11_analytic(0.37, 0.0, omega).population, 1.0, 1e-12);
  const Population11 off = population_11_analytic(kEta * 1.2, 2.0 * kPi / omega, omega);
  EXPECT_NEAR(1.0 - off.population, 0.155, 0.005);
}

TEST(Population11, MatchesNumericPropagator) {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> eta_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> t_dist(0.0, 3.0);
  const double omega = 2.0 * kPi;
  CVector in = CVector::Zero(3);
  in[2] = 1.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double eta = eta_dist(rng);
    const double t = t_dist(rng);
    const Complex numeric = matexp_action(h11_matrix(omega, eta), t, in)[2];
    const Population11 analytic = population_11_analytic(eta, t, omega);
    EXPECT_LT(std::abs(numeric - analytic.amplitude), 1e-9);
    EXPECT_NEAR(std::norm(numeric), analytic.population, 1e-9);
  }
}

TEST(Restoration, AnySuperpositionOfTheChainReturns) {
  std::mt19937_64 rng(71);
  const SystemParams p;
  const SpaceSpec s = p.space();
  for (int trial = 0; trial < 20; ++trial) {
    CVector psi = CVector::Zero(s.total_dim());
    const CVector c = testing::random_vector(rng, 3);
    psi[s.index(AtomLevel::A1, 1)] = c[0];
    psi[s.index(AtomLevel::R1, 1)] = c[1];
    psi[s.index(AtomLevel::R2, 0)] = c[2];
    const CVector out = run_coherent(p, one_step_schedule(p), psi);
    EXPECT_NEAR(std::norm(psi.dot(out)), 1.0, 1e-9);
  }
}

TEST(Robustness, PublishedValues) {
  EXPECT_NEAR(robustness_error(ProtocolKind::OneStep, -0.2), 0.25, 0.01);
  EXPECT_NEAR(robustness_error(ProtocolKind::OneStep, 0.2), 0.155, 0.005);
  EXPECT_NEAR(robustness_error(ProtocolKind::ThreeStep, 0.2), 0.35, 0.01);
  EXPECT_NEAR(robustness_error(ProtocolKind::ThreeStep, -0.2), 0.35, 0.01);
}

TEST(Robustness, OneStepMatchesAnalyticAmplitude) {
  const SystemParams p;
  for (double eps : {-0.3, -0.1, 0.05, 0.25}) {
    const Population11 a = population_11_analytic(p.eta() * (1.0 + eps), 2.0 * kPi / p.omega_laser, p.omega_laser);
    EXPECT_NEAR(robustness_error(ProtocolKind::OneStep, eps), 1.0 - a.population, 1e-10);
  }
}

TEST(Robustness, ThreeStepClosedForm) {
  // Stage 2 rotates |1_m r1> by cos(pi (1+eps)); the two pi pulses contribute
  // (-i)^2, leaving cos(pi eps) on |1_m 1_a>.
  for (int k = 0; k <= 40; ++k) {
    const double eps = -0.2 + 0.01 * k;
    const double s = std::sin(kPi * eps);
    EXPECT_NEAR(robustness_error(ProtocolKind::ThreeStep, eps), s * s, 1e-9);
  }
}

TEST(Robustness, ZeroAtNominalAndShape) {
  EXPECT_NEAR(robustness_error(ProtocolKind::OneStep, 0.0), 0.0, 1e-9);
  EXPECT_NEAR(robustness_error(ProtocolKind::ThreeStep, 0.0), 0.0, 1e-9);
  for (double eps : {0.05, 0.1, 0.15, 0.2}) {
    EXPECT_GT(robustness_error(ProtocolKind::OneStep, -eps), robustness_error(ProtocolKind::OneStep, eps));
    EXPECT_NEAR(robustness_error(ProtocolKind::ThreeStep, -eps), robustness_error(ProtocolKind::ThreeStep, eps), 1e-9);
  }
}

TEST(ThreeStep, MasterEquationWithoutLossesIsIdentityOnInput) {
  const SystemParams p;
  const SpaceSpec s = p.space();
  const PureState in = basis_state(AtomLevel::A1, 1, s);
  EvolutionConfig cfg;
  cfg.record_every = 1000;
  const EvolutionResult r = run_open(p, three_step_schedule(p), DensityMatrix::from_pure(in), {}, cfg);
  EXPECT_NEAR(fidelity_with_pure(r.rho, in), 1.0, 1e-8);
  const double total = three_step_schedule(p).total_duration();
  EXPECT_NEAR(r.series.times().back(), total, 1e-12);
  for (std::size_t i = 1; i < r.series.size(); ++i) EXPECT_GT(r.series.times()[i], r.series.times()[i - 1]);
}

TEST(TruthTable, CoherentPhases) {
  const auto rows = cz_truth_table(SystemParams{}, true);
  const double expected[4] = {0.0, kPi, 0.0, 0.0};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(rows[k].population, 1.0, 1e-9) << k;
    EXPECT_LT(angular_distance(rows[k].phase, expected[k]), 1e-6) << k;
  }
  EXPECT_EQ(rows[1].atom, AtomLevel::A1);
  EXPECT_EQ(rows[1].photons, 0);
}

TEST(TruthTable, OpenSystemStaysCloseToIdeal) {
  EvolutionConfig cfg;
  cfg.steps_per_unit_time = 400.0;
  const auto rows = cz_truth_table(SystemParams{}, false, cfg);
  const double expected[4] = {0.0, kPi, 0.0, 0.0};
  // |0_m 0_a> only sees the thermal bath: two-level rate equation 0 <-> 1 photon.
  const SystemParams p;
  const double nbar = p.nbar();
  const double rate = p.kappa() * (2.0 * nbar + 1.0);
  const double loss = nbar / (2.0 * nbar + 1.0) * (1.0 - std::exp(-rate * kTwoPi / p.omega_laser));
  EXPECT_NEAR(rows[0].population, 1.0 - loss, 1e-6);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_GT(rows[k].population, 0.85) << k;
    EXPECT_LE(rows[k].population, 1.0 + 1e-9) << k;
    EXPECT_LT(angular_distance(rows[k].phase, expected[k]), 0.1) << k;
  }
  // Inputs with a photon lose population to cavity decay.
  EXPECT_LT(rows[2].population, rows[1].population);
}

TEST(CoherentDemo, EndpointsAndFullSpaceAgreement) {
  const SystemParams p;
  const TimeSeries ts = coherent_time_evolution(p, 101);
  ASSERT_EQ(ts.size(), 101u);
  EXPECT_NEAR(ts.column("pop_11").front(), 1.0, 1e-14);
  EXPECT_NEAR(ts.column("pop_11").back(), 1.0, 1e-9);
  EXPECT_NEAR(ts.times().back(), 2.0 * kPi / p.omega_laser, 1e-12);
  const SpaceSpec s = p.space();
  const CMatrix h = build_hamiltonian(p, true, true);
  const SpectralPropagator prop(h);
  const CVector in = basis_state(AtomLevel::A1, 1, s).amplitudes();
  for (std::size_t i : {13u, 50u, 77u}) {
    const CVector out = prop.apply(ts.times()[i], in);
    EXPECT_NEAR(std::norm(out[s.index(AtomLevel::A1, 1)]), ts.column("pop_11")[i], 1e-10);
    EXPECT_NEAR(std::norm(out[s.index(AtomLevel::R1, 1)]), ts.column("pop_1r1")[i], 1e-10);
    EXPECT_NEAR(std::norm(out[s.index(AtomLevel::R2, 0)]), ts.column("pop_0r2")[i], 1e-10);
    EXPECT_NEAR(ts.column("pop_11")[i] + ts.column("pop_1r1")[i] + ts.column("pop_0r2")[i], 1.0, 1e-10);
  }
}

}  // namespace
}  // namespace rydcz
