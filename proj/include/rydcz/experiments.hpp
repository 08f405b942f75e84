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

// Bell-state preparation H_a . CZ . H_a, position-noise averaging and
// parameter sweeps.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rydcz/errors.hpp"
#include "rydcz/hilbert.hpp"
#include "rydcz/lindblad.hpp"
#include "rydcz/model.hpp"
#include "rydcz/parallel.hpp"
#include "rydcz/protocols.hpp"
#include "rydcz/qmath.hpp"

namespace rydcz {

/// Ideal Hadamard on the qubit levels {|0_a>, |1_a>}; identity on g, r1, r2
/// and on the photon mode.
inline CMatrix hadamard_atom_unitary(const SpaceSpec& space) {
  CMatrix atom = CMatrix::Identity(kAtomDim, kAtomDim);
  const double r = 1.0 / std::sqrt(2.0);
  atom(0, 0) = r;
  atom(0, 1) = r;
  atom(1, 0) = r;
  atom(1, 1) = -r;
  return kron(atom, CMatrix::Identity(space.photon_dim(), space.photon_dim()));
}

inline PureState hadamard_atom(const PureState& psi) {
  return PureState(psi.space(), hadamard_atom_unitary(psi.space()) * psi.amplitudes());
}

inline DensityMatrix hadamard_atom(const DensityMatrix& rho) {
  const CMatrix u = hadamard_atom_unitary(rho.space());
  return DensityMatrix::trusted(rho.space(), u * rho.matrix() * u.adjoint());
}

/// (|0_m 0_a> + |1_m 0_a>) / sqrt(2)
inline PureState bell_input_state(const SpaceSpec& space) {
  CVector v = CVector::Zero(space.total_dim());
  v[space.index(AtomLevel::A0, 0)] = 1.0;
  v[space.index(AtomLevel::A0, 1)] = 1.0;
  return PureState(space, v);
}

/// |Psi+> = (|0_m 1_a> + |1_m 0_a>) / sqrt(2)
inline PureState bell_target_state(const SpaceSpec& space) {
  CVector v = CVector::Zero(space.total_dim());
  v[space.index(AtomLevel::A1, 0)] = 1.0;
  v[space.index(AtomLevel::A0, 1)] = 1.0;
  return PureState(space, v);
}

enum class Decoherence { On, Off };

struct BellResult {
  double fidelity = 0.0;
  DensityMatrix rho_final;
  SystemParams params_used;
  StateDiagnostics diagnostics;
  std::vector<PositivityViolation> warnings;
};

/// Bell fidelity <Psi+| rho_f |Psi+> after H_a . CZ . H_a on the product
/// input, with the gate simulated by the master equation over one 2 pi/Omega pulse.
inline BellResult bell_fidelity(const SystemParams& p, const EvolutionConfig& cfg = {},
                                Decoherence decoherence = Decoherence::On) {
  p.validate();
  const SpaceSpec space = p.space();
  const DensityMatrix rho0 = DensityMatrix::from_pure(hadamard_atom(bell_input_state(space)));
  std::vector<CollapseOp> collapse;
  if (decoherence == Decoherence::On) collapse = build_collapse_ops(p);

  EvolutionConfig run_cfg = cfg;
  run_cfg.record_every = std::numeric_limits<std::size_t>::max();  // final state only
  EvolutionResult run = run_open(p, one_step_schedule(p), rho0, collapse, run_cfg);

  DensityMatrix rho_f = hadamard_atom(run.rho);
  const double f = fidelity_with_pure(rho_f, bell_target_state(space));
  StateDiagnostics diag = rho_f.diagnostics();
  return {f, std::move(rho_f), p, diag, std::move(run.warnings)};
}

/// Gauss-Hermite nodes/weights for the weight exp(-x^2), with weights
/// rescaled to sum to one so that sum_i w_i f(x_i) ~ E[f(X)], X ~ N(0, 1/2).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch: nodes are the eigenvalues of the symmetric tridiagonal
/// Jacobi matrix with off-diagonal sqrt(k/2); weights are the squared first
/// components of the normalized eigenvectors.
inline QuadratureRule gauss_hermite(std::size_t n) {
  if (n == 0) throw ValidationError("nodes", "quadrature needs at least one node");
  const Index dim = static_cast<Index>(n);
  CMatrix jacobi = CMatrix::Zero(dim, dim);
  for (Index k = 1; k < dim; ++k) {
    jacobi(k - 1, k) = jacobi(k, k - 1) = std::sqrt(static_cast<double>(k) / 2.0);
  }
  const EigenSystem eig = hermitian_eigs(jacobi);

  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    rule.nodes[i] = 0.5 * (eig.values[static_cast<Index>(i)] - eig.values[static_cast<Index>(j)]);
    rule.weights[i] = 0.5 * (std::norm(eig.vectors(0, static_cast<Index>(i))) +
                             std::norm(eig.vectors(0, static_cast<Index>(j))));
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  double total = 0.0;
  for (double w : rule.weights) total += w;
  for (double& w : rule.weights) w /= total;
  return rule;
}

/// Coupling g + slope * z, taken in magnitude: the sign of g is a phase
/// convention on |r2> and leaves every fidelity unchanged.
inline SystemParams displaced_coupling(const SystemParams& p, double slope, double z) {
  SystemParams q = p;
  q.g = std::abs(p.g + slope * z);
  return q;
}

/// Gaussian average of F(g + slope z) over z ~ N(0, sigma^2) with Omega and
/// the pulse length held at their nominal values.
inline double averaged_fidelity_position(const SystemParams& p, const PositionNoise& noise,
                                         const QuadratureRule& rule, const EvolutionConfig& cfg = {}) {
  if (!(noise.sigma >= 0.0)) throw ValidationError("sigma", "must be non-negative");
  if (noise.sigma == 0.0 || noise.slope == 0.0) return bell_fidelity(p, cfg).fidelity;
  const std::vector<double> values = parallel_map(rule.nodes.size(), [&](std::size_t i) {
    const double z = std::sqrt(2.0) * noise.sigma * rule.nodes[i];
    return bell_fidelity(displaced_coupling(p, noise.slope, z), cfg).fidelity;
  });
  double avg = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) avg += rule.weights[i] * values[i];
  return avg;
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepParameter { QFactor, Temperature, Sigma, Epsilon };

constexpr std::string_view sweep_parameter_name(SweepParameter s) {
  switch (s) {
    case SweepParameter::QFactor: return "q_factor";
    case SweepParameter::Temperature: return "temperature";
    case SweepParameter::Sigma: return "sigma";
    case SweepParameter::Epsilon: return "epsilon";
  }
  return "?";
}

struct SweepSpec {
  SweepParameter parameter = SweepParameter::QFactor;
  std::vector<double> values;  // Q, T in K, sigma in um, or epsilon
  SystemParams base;
  std::optional<PositionNoise> noise;  // sigma sweeps use its slope
  ProtocolKind protocol = ProtocolKind::OneStep;  // epsilon sweeps
  std::size_t quadrature_nodes = 11;
  EvolutionConfig solver;
};

struct SweepRow {
  double value = 0.0;
  double result = std::numeric_limits<double>::quiet_NaN();  // fidelity, or error for epsilon
  std::string error;  // empty on success
  bool ok() const { return error.empty(); }
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::QFactor;
  std::vector<SweepRow> rows;  // input order
  std::size_t failures() const {
    std::size_t n = 0;
    for (const SweepRow& r : rows) n += r.ok() ? 0 : 1;
    return n;
  }
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> v = linspace(std::log10(lo), std::log10(hi), n);
  for (double& x : v) x = std::pow(10.0, x);
  if (n > 0) {
    v.front() = lo;
    v.back() = hi;
  }
  return v;
}

/// Default grids: Q in logspace(1e5, 2e6, 25); T in [10, 100] mK (20 points);
/// sigma in [0, 1] um (21 points); epsilon in [-0.2, 0.2] (41 points).
inline std::vector<double> default_grid(SweepParameter s) {
  switch (s) {
    case SweepParameter::QFactor: return logspace(1e5, 2e6, 25);
    case SweepParameter::Temperature: return linspace(0.010, 0.100, 20);
    case SweepParameter::Sigma: return linspace(0.0, 1.0, 21);
    case SweepParameter::Epsilon: return linspace(-0.2, 0.2, 41);
  }
  return {};
}

inline double sweep_point(const SweepSpec& spec, double value, const QuadratureRule& rule) {
  switch (spec.parameter) {
    case SweepParameter::QFactor: {
      SystemParams p = spec.base;
      p.q_factor = value;
      return bell_fidelity(p, spec.solver).fidelity;
    }
    case SweepParameter::Temperature: {
      SystemParams p = spec.base;
      p.temperature = value;
      return bell_fidelity(p, spec.solver).fidelity;
    }
    case SweepParameter::Sigma: {
      PositionNoise noise = spec.noise.value_or(PositionNoise{});
      noise.sigma = value;
      return averaged_fidelity_position(spec.base, noise, rule, spec.solver);
    }
    case SweepParameter::Epsilon:
      return robustness_error(spec.protocol, value, spec.base);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

/// One independent evaluation per value. A failing row records its error
/// and the sweep continues.
inline SweepResult sweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw ValidationError("values", "sweep needs at least one value");
  for (double v : spec.values) {
    if (!std::isfinite(v)) throw ValidationError("values", "sweep values must be finite");
  }
  const QuadratureRule rule =
      spec.parameter == SweepParameter::Sigma ? gauss_hermite(spec.quadrature_nodes) : QuadratureRule{};
  SweepResult result{spec.parameter, {}};
  result.rows = parallel_map(spec.values.size(), [&](std::size_t i) {
    SweepRow row;
    row.value = spec.values[i];
    try {
      row.result = sweep_point(spec, row.value, rule);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    return row;
  });
  return result;
}

}  // namespace rydcz
