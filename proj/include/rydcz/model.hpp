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

// Physical model: parameters, Hamiltonian and jump operators for one atom
// coupled to a single microwave resonator mode.
//
// Units: angular frequencies in rad/us, times in us, temperature in K,
// position in um. hbar = 1 everywhere except inside nbar_th().

#include <cmath>
#include <vector>

#include "rydcz/errors.hpp"
#include "rydcz/hilbert.hpp"
#include "rydcz/lindblad.hpp"
#include "rydcz/qmath.hpp"

namespace rydcz {

inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;   // J / K
/// |eta| that makes a single 2*pi laser pulse restore |1_m 1_a>.
inline const double kEtaCz = std::sqrt(6.0) / 2.0;

/// Mean thermal occupation 1 / (exp(hbar w / kB T) - 1); exactly 0 at T = 0.
inline double nbar_th(double omega_c, double temperature) {
  if (temperature <= 0.0) return 0.0;
  const double x = kHbar * omega_c * 1e6 / (kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

struct SystemParams {
  double omega_laser = kTwoPi * 1.0;                  // Rabi frequency
  double g = kTwoPi * std::sqrt(3.0) / 2.0;           // atom-photon coupling
  double omega_c = kTwoPi * 5037.0;                   // resonator frequency
  double q_factor = 2e5;
  double temperature = 0.050;                         // K
  double tau1 = 820.0;                                // lifetime of r1, us
  double tau2 = 1970.0;                               // lifetime of r2, us
  int n_max = 5;

  double eta() const { return std::sqrt(2.0) * g / omega_laser; }
  double kappa() const { return omega_c / q_factor; }
  double nbar() const { return nbar_th(omega_c, temperature); }
  SpaceSpec space() const { return SpaceSpec(n_max); }

  void validate() const {
    auto positive = [](double v, const char* key) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(key, "must be positive and finite");
    };
    positive(omega_laser, "omega_laser");
    positive(omega_c, "omega_c");
    positive(tau1, "tau1");
    positive(tau2, "tau2");
    if (!(g >= 0.0) || !std::isfinite(g)) throw ValidationError("g", "must be non-negative and finite");
    if (!(q_factor >= 1.0) || !std::isfinite(q_factor)) throw ValidationError("q_factor", "must be >= 1");
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
      throw ValidationError("temperature", "must be non-negative");
    }
    if (n_max < 1) throw ValidationError("n_max", "must be >= 1");
  }

  /// Same parameters with g moved and Omega rescaled to keep 2g/sqrt(3) = Omega.
  SystemParams with_matched_coupling(double new_g) const {
    SystemParams p = *this;
    p.g = new_g;
    p.omega_laser = 2.0 * new_g / std::sqrt(3.0);
    return p;
  }
};

struct PositionNoise {
  double slope = kTwoPi * 0.12;  // d g / d z, rad/us per um
  double sigma = 0.27;           // r.m.s. vertical displacement, um
};

/// Relative deviation |eta| / (sqrt(6)/2) - 1 from the single-pulse condition.
inline double cz_condition(const SystemParams& p) { return std::abs(p.eta()) / kEtaCz - 1.0; }

/// Coherent Hamiltonian on the full space:
///   g * scale * (|r2><r1| a + h.c.)   if microwave_on
///   (Omega / 2) * (|r1><1a| + h.c.)    if laser_on
inline CMatrix build_hamiltonian(const SystemParams& p, bool laser_on, bool microwave_on,
                                 double coupling_scale = 1.0) {
  const SpaceSpec space = p.space();
  CMatrix h = CMatrix::Zero(space.total_dim(), space.total_dim());
  if (microwave_on) {
    const CMatrix term = (p.g * coupling_scale) * atom_op(AtomLevel::R2, AtomLevel::R1, space) *
                         photon_op(annihilation(space.n_max()), space);
    h += term + term.adjoint();
  }
  if (laser_on) {
    const CMatrix term = (0.5 * p.omega_laser) * atom_op(AtomLevel::R1, AtomLevel::A1, space);
    h += term + term.adjoint();
  }
  return h;
}

/// Jump operators in fixed order: r1 decay, r2 decay, cavity loss, thermal excitation.
inline std::vector<CollapseOp> build_collapse_ops(const SystemParams& p) {
  const SpaceSpec space = p.space();
  const double nbar = p.nbar();
  const CMatrix a = photon_op(annihilation(space.n_max()), space);
  std::vector<CollapseOp> cs;
  cs.reserve(4);
  cs.push_back({atom_op(AtomLevel::G, AtomLevel::R1, space) / std::sqrt(p.tau1)});
  cs.push_back({atom_op(AtomLevel::G, AtomLevel::R2, space) / std::sqrt(p.tau2)});
  cs.push_back({a * std::sqrt((nbar + 1.0) * p.kappa())});
  cs.push_back({CMatrix(a.adjoint()) * std::sqrt(nbar * p.kappa())});
  return cs;
}

}  // namespace rydcz
