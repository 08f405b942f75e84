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

// Fixed-step RK4 integration of the Lindblad master equation
//
//   d rho/dt = i (rho H - H rho) + sum_k [2 c_k rho c_k^+ - c_k^+ c_k rho - rho c_k^+ c_k] / 2
//
// with hbar = 1, time in microseconds and rates in rad/us. The generators
// of this model are very sparse, so the right-hand side is evaluated from
// triplet lists rather than dense products.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rydcz/errors.hpp"
#include "rydcz/hilbert.hpp"
#include "rydcz/qmath.hpp"

namespace rydcz {

/// Jump operator with its rate folded in (units of sqrt(rad/us)).
struct CollapseOp {
  CMatrix matrix;
};

struct EvolutionConfig {
  double steps_per_unit_time = 20000.0;  // RK4 steps per microsecond
  std::size_t record_every = 100;        // steps between TimeSeries rows
  bool positivity_check = true;
};

/// Named real columns sampled on a strictly increasing time grid (us).
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<std::string> names)
      : names_(std::move(names)), columns_(names_.size()) {}

  void add_row(double t, std::span<const double> values) {
    if (values.size() != names_.size()) throw DimensionMismatch("TimeSeries: row width mismatch");
    if (!times_.empty() && !(t > times_.back())) {
      throw InvalidState("TimeSeries: times must be strictly increasing");
    }
    times_.push_back(t);
    for (std::size_t c = 0; c < values.size(); ++c) columns_[c].push_back(values[c]);
  }

  /// Appends `other` shifted by `offset`, skipping rows that would not advance time.
  void append(const TimeSeries& other, double offset) {
    if (other.names_ != names_) throw DimensionMismatch("TimeSeries: column names differ");
    std::vector<double> row(names_.size());
    for (std::size_t r = 0; r < other.times_.size(); ++r) {
      const double t = other.times_[r] + offset;
      if (!times_.empty() && !(t > times_.back())) continue;
      for (std::size_t c = 0; c < names_.size(); ++c) row[c] = other.columns_[c][r];
      add_row(t, row);
    }
  }

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<std::string>& names() const { return names_; }

  const std::vector<double>& column(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw IndexOutOfRange("TimeSeries: no column '" + name + "'");
    return columns_[static_cast<std::size_t>(it - names_.begin())];
  }
  const std::vector<double>& column(std::size_t c) const { return columns_.at(c); }

 private:
  std::vector<std::string> names_;
  std::vector<double> times_;
  std::vector<std::vector<double>> columns_;
};

/// Real observable recorded along a trajectory.
struct Observable {
  std::string name;
  std::function<double(const CMatrix&)> eval;
};

/// Population <i|rho|i> of one composite basis index.
inline Observable population_observable(std::string name, Index i) {
  return {std::move(name), [i](const CMatrix& rho) { return rho(i, i).real(); }};
}

struct PositivityViolation {
  double time = 0.0;
  double min_eigenvalue = 0.0;
};

struct EvolutionResult {
  DensityMatrix rho;
  TimeSeries series;
  std::vector<PositivityViolation> warnings;  // non-fatal
  std::size_t steps = 0;
};

namespace detail {

struct SparseEntry {
  Index row;
  Index col;
  Complex value;
};
using SparseOp = std::vector<SparseEntry>;

inline SparseOp to_sparse(const CMatrix& m) {
  SparseOp out;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, j) != Complex{0.0, 0.0}) out.push_back({i, j, m(i, j)});
    }
  }
  return out;
}

}  // namespace detail

/// The Lindblad generator for a fixed Hamiltonian and set of jump operators.
class Liouvillian {
 public:
  Liouvillian(const CMatrix& h, std::span<const CollapseOp> cs) : dim_(h.rows()) {
    require_square(h, "Liouvillian");
    const double residue = hermiticity_residue(h);
    if (residue > kHermitianTolerance) throw NotHermitian(residue);

    // -i H_eff with H_eff = H - (i/2) sum c^+ c, so that
    // L(rho) = X + X^+ + sum c rho c^+ where X = -i H_eff rho.
    CMatrix gen = -kI * h;
    for (const CollapseOp& c : cs) {
      if (c.matrix.rows() != dim_ || c.matrix.cols() != dim_) {
        throw DimensionMismatch("Liouvillian: collapse operator is " +
                                std::to_string(c.matrix.rows()) + "x" +
                                std::to_string(c.matrix.cols()) + ", expected dimension " +
                                std::to_string(dim_));
      }
      gen -= 0.5 * (c.matrix.adjoint() * c.matrix);
      detail::SparseOp jump = detail::to_sparse(c.matrix);
      if (!jump.empty()) jumps_.push_back(std::move(jump));
    }
    generator_ = detail::to_sparse(gen);
  }

  Index dim() const { return dim_; }

  /// out = L(rho). rho must be Hermitian; out is Hermitian by construction.
  void apply(const CMatrix& rho, CMatrix& out) const {
    out.setZero(dim_, dim_);
    for (const auto& e : generator_) {
      for (Index k = 0; k < dim_; ++k) out(e.row, k) += e.value * rho(e.col, k);
    }
    // Half of the jump term goes in before symmetrizing, so the result is
    // Hermitian to the last bit. Otherwise rounding leaves an anti-Hermitian
    // part that X + X^+ does not damp, and it grows step by step.
    for (const auto& jump : jumps_) {
      for (const auto& left : jump) {
        for (const auto& right : jump) {
          out(left.row, right.row) += 0.5 * left.value * rho(left.col, right.col) * std::conj(right.value);
        }
      }
    }
    out += out.adjoint().eval();
  }

  CMatrix operator()(const CMatrix& rho) const {
    if (rho.rows() != dim_ || rho.cols() != dim_) throw DimensionMismatch("Liouvillian: state dimension");
    CMatrix out;
    apply(rho, out);
    return out;
  }

 private:
  Index dim_;
  detail::SparseOp generator_;
  std::vector<detail::SparseOp> jumps_;
};

inline CMatrix lindblad_rhs(const CMatrix& rho, const CMatrix& h, std::span<const CollapseOp> cs) {
  if (rho.rows() != h.rows() || rho.cols() != h.cols()) {
    throw DimensionMismatch("lindblad_rhs: state and Hamiltonian dimensions differ");
  }
  return Liouvillian(h, cs)(rho);
}

inline CMatrix lindblad_rhs(const DensityMatrix& rho, const CMatrix& h, std::span<const CollapseOp> cs) {
  return lindblad_rhs(rho.matrix(), h, cs);
}

inline std::size_t step_count(double duration, double steps_per_unit_time) {
  if (duration <= 0.0) return 0;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(duration * steps_per_unit_time - 1e-9)));
}

inline EvolutionResult evolve(const DensityMatrix& rho0, const CMatrix& h, std::span<const CollapseOp> cs,
                              double duration, const EvolutionConfig& cfg,
                              std::span<const Observable> observables = {}) {
  if (!(duration >= 0.0)) throw ValidationError("duration", "must be non-negative");
  if (!(cfg.steps_per_unit_time > 0.0)) throw ValidationError("steps_per_unit_time", "must be positive");
  if (cfg.record_every == 0) throw ValidationError("record_every", "must be positive");
  if (h.rows() != rho0.space().total_dim()) throw DimensionMismatch("evolve: Hamiltonian dimension");

  const Liouvillian lv(h, cs);
  const std::size_t steps = step_count(duration, cfg.steps_per_unit_time);
  const double dt = steps == 0 ? 0.0 : duration / static_cast<double>(steps);

  std::vector<std::string> names{"trace"};
  for (const Observable& o : observables) names.push_back(o.name);
  TimeSeries series(std::move(names));
  std::vector<double> row(observables.size() + 1);
  std::vector<PositivityViolation> warnings;

  CMatrix rho = 0.5 * (rho0.matrix() + rho0.matrix().adjoint());
  auto record = [&](std::size_t step) {
    const double t = static_cast<double>(step) * dt;
    row[0] = rho.trace().real();
    for (std::size_t k = 0; k < observables.size(); ++k) row[k + 1] = observables[k].eval(rho);
    series.add_row(t, row);
    if (cfg.positivity_check && step > 0) {
      const double lowest = hermitian_eigs(0.5 * (rho + rho.adjoint())).values.minCoeff();
      if (lowest < -1e-6) warnings.push_back({t, lowest});
    }
  };

  record(0);
  const Index n = lv.dim();
  CMatrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n);
  for (std::size_t step = 1; step <= steps; ++step) {
    lv.apply(rho, k1);
    tmp = rho + (0.5 * dt) * k1;
    lv.apply(tmp, k2);
    tmp = rho + (0.5 * dt) * k2;
    lv.apply(tmp, k3);
    tmp = rho + dt * k3;
    lv.apply(tmp, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % cfg.record_every == 0 || step == steps) record(step);
  }

  return {DensityMatrix::trusted(rho0.space(), std::move(rho)), std::move(series), std::move(warnings), steps};
}

/// Step-doubling self test: reruns at twice the step density and throws
/// StepTooCoarse if the probe fidelity moves by more than `tolerance`.
/// Returns the observed change.
inline double check_step_density(const DensityMatrix& rho0, const CMatrix& h, std::span<const CollapseOp> cs,
                                 double duration, const EvolutionConfig& cfg, const PureState& probe,
                                 double tolerance = 1e-6) {
  EvolutionConfig quiet = cfg;
  quiet.positivity_check = false;
  quiet.record_every = std::numeric_limits<std::size_t>::max();
  const double coarse = fidelity_with_pure(evolve(rho0, h, cs, duration, quiet).rho, probe);
  quiet.steps_per_unit_time *= 2.0;
  const double fine = fidelity_with_pure(evolve(rho0, h, cs, duration, quiet).rho, probe);
  const double change = std::abs(fine - coarse);
  if (change > tolerance) throw StepTooCoarse(change, tolerance);
  return change;
}

}  // namespace rydcz
