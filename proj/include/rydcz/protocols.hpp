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

#pragma once

// Gate protocols as piecewise-constant pulse schedules, the closed-form
// three-level solution for the |1_m 1_a> input, and coherent/open runners.

#include <array>
#include <cmath>
#include <span>
#include <string_view>
#include <vector>

#include "rydcz/errors.hpp"
#include "rydcz/hilbert.hpp"
#include "rydcz/lindblad.hpp"
#include "rydcz/model.hpp"
#include "rydcz/qmath.hpp"

namespace rydcz {

enum class ProtocolKind { OneStep, ThreeStep };

constexpr std::string_view protocol_name(ProtocolKind kind) {
  return kind == ProtocolKind::OneStep ? "one-step" : "three-step";
}

struct PulseStage {
  bool laser_on = false;
  bool microwave_on = false;
  double duration = 0.0;        // us
  double coupling_scale = 1.0;  // actual coupling is g * coupling_scale
};

struct GateSchedule {
  ProtocolKind kind = ProtocolKind::OneStep;
  std::vector<PulseStage> stages;

  double total_duration() const {
    double t = 0.0;
    for (const PulseStage& s : stages) t += s.duration;
    return t;
  }

  /// Copy with every stage running at coupling g * scale; durations unchanged.
  GateSchedule with_coupling_scale(double scale) const {
    GateSchedule out = *this;
    for (PulseStage& s : out.stages) s.coupling_scale = scale;
    return out;
  }
};

/// One 2*pi laser pulse with the resonator coupling always on.
inline GateSchedule one_step_schedule(const SystemParams& p) {
  return {ProtocolKind::OneStep, {{true, true, kTwoPi / p.omega_laser, 1.0}}};
}

/// pi laser pulse, resonant exchange for pi/g, pi laser pulse. The microwave
/// coupling is taken as fully off during the laser pulses. The wait uses the
/// nominal g even when a schedule is later rescaled.
inline GateSchedule three_step_schedule(const SystemParams& p) {
  if (!(p.g > 0.0)) throw ValidationError("g", "three-step schedule needs a positive coupling");
  const double pi_pulse = kPi / p.omega_laser;
  return {ProtocolKind::ThreeStep,
          {{true, false, pi_pulse, 1.0}, {false, true, kPi / p.g, 1.0}, {true, false, pi_pulse, 1.0}}};
}

inline GateSchedule make_schedule(ProtocolKind kind, const SystemParams& p) {
  return kind == ProtocolKind::OneStep ? one_step_schedule(p) : three_step_schedule(p);
}

// ---------------------------------------------------------------------------
// Three-level model for the |1_m 1_a> input in the dressed basis
// (|+>, |->, |1_m 1_a>), |+-> = (|1_m r1> +- |0_m r2>) / sqrt(2).

inline CMatrix h11_matrix(double omega, double eta) {
  CMatrix m(3, 3);
  m << 2.0 * eta, 0.0, 1.0,
       0.0, -2.0 * eta, 1.0,
       1.0, 1.0, 0.0;
  return (omega / (2.0 * std::sqrt(2.0))) * m;
}

struct H11Eigensystem {
  double normalizer = 0.0;    // N(eta) = sqrt(2 + 4 eta^2)
  double epsilon_plus = 0.0;  // in units of Omega; epsilon_minus = -epsilon_plus, epsilon_0 = 0
  CVector plus;
  CVector minus;
  CVector zero;
};

inline H11Eigensystem eigensystem_h11(double eta) {
  const double n = std::sqrt(2.0 + 4.0 * eta * eta);
  const double s = std::sqrt(0.5 + eta * eta);
  H11Eigensystem e;
  e.normalizer = n;
  e.epsilon_plus = n / (2.0 * std::sqrt(2.0));
  e.plus = CVector(3);
  e.plus << eta + s, -(eta - s), 1.0;
  e.minus = CVector(3);
  e.minus << eta - s, -(eta + s), 1.0;
  e.zero = CVector(3);
  e.zero << -1.0, 1.0, 2.0 * eta;
  e.plus /= n;
  e.minus /= n;
  e.zero /= n;
  return e;
}

struct Population11 {
  double population = 0.0;
  Complex amplitude;
};

/// Amplitude left on |1_m 1_a> after time t starting from |1_m 1_a>:
/// (2 cos(eps+ t) + 4 eta^2) / N^2.
inline Population11 population_11_analytic(double eta, double t, double omega) {
  const H11Eigensystem e = eigensystem_h11(eta);
  const double eps = e.epsilon_plus * omega;
  const double amp = (2.0 * std::cos(eps * t) + 4.0 * eta * eta) / (e.normalizer * e.normalizer);
  return {amp * amp, Complex{amp, 0.0}};
}

// ---------------------------------------------------------------------------
// Schedule runners on the full composite space.

/// Pure-state evolution through every stage with the exact spectral propagator.
inline CVector run_coherent(const SystemParams& p, const GateSchedule& schedule, const CVector& psi0) {
  CVector psi = psi0;
  for (const PulseStage& stage : schedule.stages) {
    if (stage.duration == 0.0) continue;
    const CMatrix h = build_hamiltonian(p, stage.laser_on, stage.microwave_on, stage.coupling_scale);
    psi = SpectralPropagator(h).apply(stage.duration, psi);
  }
  return psi;
}

/// Master-equation evolution through every stage. The TimeSeries spans the
/// whole schedule. An empty `collapse` list gives purely coherent dynamics.
inline EvolutionResult run_open(const SystemParams& p, const GateSchedule& schedule, const DensityMatrix& rho0,
                                std::span<const CollapseOp> collapse, const EvolutionConfig& cfg,
                                std::span<const Observable> observables = {}) {
  EvolutionResult acc{rho0, TimeSeries{}, {}, 0};
  double offset = 0.0;
  bool first = true;
  for (const PulseStage& stage : schedule.stages) {
    const CMatrix h = build_hamiltonian(p, stage.laser_on, stage.microwave_on, stage.coupling_scale);
    EvolutionResult part = evolve(acc.rho, h, collapse, stage.duration, cfg, observables);
    if (first) {
      acc.series = TimeSeries(part.series.names());
      first = false;
    }
    acc.series.append(part.series, offset);
    for (PositivityViolation w : part.warnings) {
      w.time += offset;
      acc.warnings.push_back(w);
    }
    acc.steps += part.steps;
    acc.rho = std::move(part.rho);
    offset += stage.duration;
  }
  return acc;
}

/// Population lost from |1_m 1_a> when the coupling is g (1 + epsilon) but the
/// schedule is timed for the nominal g. No decoherence.
inline double robustness_error(ProtocolKind kind, double epsilon, const SystemParams& p = SystemParams{}) {
  const SpaceSpec space = p.space();
  const PureState in = basis_state(AtomLevel::A1, 1, space);
  const GateSchedule schedule = make_schedule(kind, p).with_coupling_scale(1.0 + epsilon);
  const CVector out = run_coherent(p, schedule, in.amplitudes());
  return 1.0 - std::norm(out[space.index(AtomLevel::A1, 1)]);
}

struct TruthRow {
  AtomLevel atom;
  int photons;
  double population;  // |<in|out>|^2, or <in|rho|in>
  double phase;       // radians in (-pi, pi]
};

/// Computational inputs in the order |0_m 0_a>, |0_m 1_a>, |1_m 0_a>, |1_m 1_a>.
inline constexpr std::array<std::pair<AtomLevel, int>, 4> kComputationalBasis = {
    std::pair{AtomLevel::A0, 0}, std::pair{AtomLevel::A1, 0}, std::pair{AtomLevel::A0, 1},
    std::pair{AtomLevel::A1, 1}};

/// Runs the one-step gate from each computational basis state.
///
/// Coherent mode reads population and phase from <in|psi_out>. Open mode
/// takes the population from rho evolved from |in><in|, and the phase from
/// arg rho[in, 0_m0_a] after evolving (|in> + |0_m 0_a>)/sqrt(2).
inline std::array<TruthRow, 4> cz_truth_table(const SystemParams& p, bool coherent_only,
                                              const EvolutionConfig& cfg = {}) {
  const SpaceSpec space = p.space();
  const GateSchedule schedule = one_step_schedule(p);
  const Index ref = space.index(AtomLevel::A0, 0);
  std::array<TruthRow, 4> rows{};
  const std::vector<CollapseOp> collapse = build_collapse_ops(p);
  EvolutionConfig quiet = cfg;
  quiet.record_every = std::numeric_limits<std::size_t>::max();

  for (std::size_t k = 0; k < kComputationalBasis.size(); ++k) {
    const auto [level, photons] = kComputationalBasis[k];
    const Index idx = space.index(level, photons);
    const PureState in = basis_state(level, photons, space);
    TruthRow& row = rows[k];
    row.atom = level;
    row.photons = photons;
    if (coherent_only) {
      const Complex overlap = run_coherent(p, schedule, in.amplitudes())[idx];
      row.population = std::norm(overlap);
      row.phase = std::arg(overlap);
      continue;
    }
    const EvolutionResult pop_run = run_open(p, schedule, DensityMatrix::from_pure(in), collapse, quiet);
    row.population = pop_run.rho(idx, idx).real();
    if (idx == ref) {
      row.phase = 0.0;
      continue;
    }
    CVector sup = CVector::Zero(space.total_dim());
    sup[idx] = 1.0;
    sup[ref] = 1.0;
    const EvolutionResult phase_run =
        run_open(p, schedule, DensityMatrix::from_pure(PureState(space, sup)), collapse, quiet);
    row.phase = std::arg(phase_run.rho(idx, ref));
  }
  return rows;
}

/// Coherent dynamics of the |1_m 1_a> input on the chain
/// |1_m 1_a> -- Omega/2 -- |1_m r1> -- g -- |0_m r2>, sampled uniformly over
/// one gate. Columns: populations and phases of the three components.
inline TimeSeries coherent_time_evolution(const SystemParams& p, std::size_t samples = 201) {
  if (samples < 2) throw ValidationError("samples", "need at least two samples");
  CMatrix h = CMatrix::Zero(3, 3);
  h(0, 1) = h(1, 0) = 0.5 * p.omega_laser;
  h(1, 2) = h(2, 1) = p.g;
  const SpectralPropagator prop(h);
  CVector psi0 = CVector::Zero(3);
  psi0[0] = 1.0;

  TimeSeries series({"pop_11", "pop_1r1", "pop_0r2", "phase_11", "phase_1r1", "phase_0r2"});
  const double duration = kTwoPi / p.omega_laser;
  std::array<double, 6> row{};
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = duration * static_cast<double>(k) / static_cast<double>(samples - 1);
    const CVector psi = prop.apply(t, psi0);
    for (Index c = 0; c < 3; ++c) {
      row[static_cast<std::size_t>(c)] = std::norm(psi[c]);
      row[static_cast<std::size_t>(c) + 3] = std::arg(psi[c]);
    }
    series.add_row(t, row);
  }
  return series;
}

}  // namespace rydcz
