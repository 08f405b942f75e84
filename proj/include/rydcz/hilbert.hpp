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

// Composite atom (x) Fock space. Atom levels are the outer (major) factor:
// index = atom_index * (n_max + 1) + photon_number.

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "rydcz/errors.hpp"
#include "rydcz/qmath.hpp"

namespace rydcz {

enum class AtomLevel : int { A0 = 0, A1 = 1, G = 2, R1 = 3, R2 = 4 };

inline constexpr Index kAtomDim = 5;
inline constexpr std::array<AtomLevel, 5> kAllLevels = {AtomLevel::A0, AtomLevel::A1, AtomLevel::G,
                                                        AtomLevel::R1, AtomLevel::R2};

constexpr Index level_index(AtomLevel level) { return static_cast<Index>(level); }

constexpr std::string_view level_name(AtomLevel level) {
  switch (level) {
    case AtomLevel::A0: return "0a";
    case AtomLevel::A1: return "1a";
    case AtomLevel::G: return "g";
    case AtomLevel::R1: return "r1";
    case AtomLevel::R2: return "r2";
  }
  return "?";
}

class SpaceSpec {
 public:
  constexpr explicit SpaceSpec(int n_max = 5) : n_max_(n_max) {
    if (n_max < 0) throw IndexOutOfRange("SpaceSpec: n_max must be non-negative");
  }

  constexpr int n_max() const { return n_max_; }
  constexpr Index photon_dim() const { return n_max_ + 1; }
  constexpr Index atom_dim() const { return kAtomDim; }
  constexpr Index total_dim() const { return kAtomDim * photon_dim(); }

  Index index(AtomLevel level, int photons) const {
    if (photons < 0 || photons > n_max_) {
      throw IndexOutOfRange("photon number " + std::to_string(photons) +
                            " outside [0, " + std::to_string(n_max_) + "]");
    }
    return level_index(level) * photon_dim() + photons;
  }

  friend constexpr bool operator==(const SpaceSpec&, const SpaceSpec&) = default;

 private:
  int n_max_;
};

/// Normalized state vector on a SpaceSpec.
class PureState {
 public:
  PureState(SpaceSpec space, CVector amplitudes) : space_(space), amps_(std::move(amplitudes)) {
    if (amps_.size() != space_.total_dim()) {
      throw SpaceMismatch("PureState: " + std::to_string(amps_.size()) +
                          " amplitudes for a space of dimension " +
                          std::to_string(space_.total_dim()));
    }
    const double norm = amps_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidState("PureState: zero or non-finite norm");
    amps_ /= norm;
  }

  const SpaceSpec& space() const { return space_; }
  const CVector& amplitudes() const { return amps_; }
  Complex operator[](Index i) const { return amps_[i]; }

 private:
  SpaceSpec space_;
  CVector amps_;
};

struct StateDiagnostics {
  double hermiticity_residue = 0.0;  // max |rho - rho^dagger|
  double trace_error = 0.0;          // |tr rho - 1|
  double min_eigenvalue = 0.0;
};

inline StateDiagnostics diagnose(const CMatrix& rho) {
  StateDiagnostics d;
  d.hermiticity_residue = hermiticity_residue(rho);
  d.trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
  // The eigensolver only accepts matrices Hermitian within 1e-10; check the
  // Hermitian part so a slightly skewed state still gets a spectrum.
  const CMatrix herm = 0.5 * (rho + rho.adjoint());
  d.min_eigenvalue = herm.size() == 0 ? 0.0 : hermitian_eigs(herm).values.minCoeff();
  return d;
}

class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-9;
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kEigenFloor = -1e-7;

  /// Validating constructor; throws InvalidState when an invariant fails.
  DensityMatrix(SpaceSpec space, CMatrix matrix) : space_(space), rho_(std::move(matrix)) {
    check_shape();
    const StateDiagnostics d = diagnose(rho_);
    if (d.hermiticity_residue > kHermitianTol) {
      throw InvalidState("DensityMatrix: Hermiticity residue " + std::to_string(d.hermiticity_residue));
    }
    if (d.trace_error > kTraceTol) {
      throw InvalidState("DensityMatrix: trace error " + std::to_string(d.trace_error));
    }
    if (d.min_eigenvalue < kEigenFloor) {
      throw InvalidState("DensityMatrix: minimum eigenvalue " + std::to_string(d.min_eigenvalue));
    }
  }

  /// Skips the spectral checks. Used for integrator output, whose quality is
  /// reported separately through StateDiagnostics.
  static DensityMatrix trusted(SpaceSpec space, CMatrix matrix) {
    return DensityMatrix(space, std::move(matrix), TrustedTag{});
  }

  static DensityMatrix from_pure(const PureState& psi) {
    const CVector& v = psi.amplitudes();
    return trusted(psi.space(), v * v.adjoint());
  }

  const SpaceSpec& space() const { return space_; }
  const CMatrix& matrix() const { return rho_; }
  Complex operator()(Index i, Index j) const { return rho_(i, j); }
  StateDiagnostics diagnostics() const { return diagnose(rho_); }

 private:
  struct TrustedTag {};
  DensityMatrix(SpaceSpec space, CMatrix matrix, TrustedTag) : space_(space), rho_(std::move(matrix)) {
    check_shape();
  }
  void check_shape() const {
    if (rho_.rows() != space_.total_dim() || rho_.cols() != space_.total_dim()) {
      throw SpaceMismatch("DensityMatrix: matrix is " + std::to_string(rho_.rows()) + "x" +
                          std::to_string(rho_.cols()) + ", space dimension " +
                          std::to_string(space_.total_dim()));
    }
  }

  SpaceSpec space_;
  CMatrix rho_;
};

/// Truncated annihilation operator on photon numbers 0..n_max.
inline CMatrix annihilation(int n_max) {
  if (n_max < 0) throw IndexOutOfRange("annihilation: n_max must be non-negative");
  CMatrix a = CMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

/// |to><from| on the atom, identity on the photon mode.
inline CMatrix atom_op(AtomLevel to, AtomLevel from, const SpaceSpec& space) {
  CMatrix atom = CMatrix::Zero(kAtomDim, kAtomDim);
  atom(level_index(to), level_index(from)) = 1.0;
  return kron(atom, CMatrix::Identity(space.photon_dim(), space.photon_dim()));
}

/// Identity on the atom tensored with a photon-mode operator.
inline CMatrix photon_op(const CMatrix& op, const SpaceSpec& space) {
  if (op.rows() != space.photon_dim() || op.cols() != space.photon_dim()) {
    throw SpaceMismatch("photon_op: operator dimension does not match the Fock cutoff");
  }
  return kron(CMatrix::Identity(kAtomDim, kAtomDim), op);
}

inline PureState basis_state(AtomLevel level, int photons, const SpaceSpec& space) {
  CVector v = CVector::Zero(space.total_dim());
  v[space.index(level, photons)] = 1.0;
  return PureState(space, std::move(v));
}

/// <psi| rho |psi>.
inline double fidelity_with_pure(const DensityMatrix& rho, const PureState& psi) {
  if (!(rho.space() == psi.space())) throw SpaceMismatch("fidelity_with_pure: spaces differ");
  const CVector& v = psi.amplitudes();
  const Complex f = v.dot(rho.matrix() * v);  // dot() conjugates the left operand
  if (std::abs(f.imag()) > 1e-10) {
    throw InvalidState("fidelity_with_pure: imaginary residue " + std::to_string(f.imag()));
  }
  return f.real();
}

/// 5x5 reduced atomic state.
inline CMatrix partial_trace_photon(const DensityMatrix& rho) {
  const SpaceSpec& space = rho.space();
  const Index p = space.photon_dim();
  CMatrix out = CMatrix::Zero(kAtomDim, kAtomDim);
  for (Index a = 0; a < kAtomDim; ++a) {
    for (Index b = 0; b < kAtomDim; ++b) {
      Complex sum = 0.0;
      for (Index n = 0; n < p; ++n) sum += rho(a * p + n, b * p + n);
      out(a, b) = sum;
    }
  }
  return out;
}

}  // namespace rydcz
