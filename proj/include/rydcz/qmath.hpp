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

// Dense complex linear algebra used throughout the simulator: Kronecker
// products, a cyclic Jacobi eigensolver for Hermitian matrices and the
// spectral propagator exp(-iHt) built on top of it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rydcz/errors.hpp"

namespace rydcz {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Entrywise tolerance on |h - h^dagger| accepted by the eigensolver.
inline constexpr double kHermitianTolerance = 1e-10;
/// Off-diagonal Frobenius norm at which Jacobi sweeps stop, relative to max(1, |h|_F).
inline constexpr double kJacobiTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

inline void require_square(const CMatrix& m, const char* where) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(where) + ": expected a square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

inline double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// max_ij |h_ij - conj(h_ji)|.
inline double hermiticity_residue(const CMatrix& h) {
  require_square(h, "hermiticity_residue");
  return max_abs(h - h.adjoint());
}

/// Kronecker product with (a (x) b)[i*rB + k, j*cB + l] = a[i, j] * b[k, l].
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const Index rb = b.rows();
  const Index cb = b.cols();
  CMatrix out(a.rows() * rb, a.cols() * cb);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

struct EigenSystem {
  RVector values;   // ascending
  CMatrix vectors;  // column k belongs to values[k]
};

namespace detail {

inline double off_diagonal_norm(const CMatrix& a) {
  double sum = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// One complex Jacobi rotation annihilating a(p, q). The rotation is
// J = diag(1, e^{-i phi}) R on the (p, q) plane, with R the real symmetric
// Jacobi rotation for the phase-stripped element |a_pq|.
inline void jacobi_rotate(CMatrix& a, CMatrix& v, Index p, Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase_conj = std::conj(apq) / mag;

  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex jpp = c;
  const Complex jpq = s;
  const Complex jqp = -s * phase_conj;
  const Complex jqq = c * phase_conj;

  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * jpp + akq * jqp;
    a(k, q) = akp * jpq + akq * jqq;
  }
  for (Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * jpp + vkq * jqp;
    v(k, q) = vkp * jpq + vkq * jqq;
  }
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
/// Eigenvalues come back ascending; equal eigenvalues keep their diagonal order.
inline EigenSystem hermitian_eigs(const CMatrix& h) {
  require_square(h, "hermitian_eigs");
  const double residue = hermiticity_residue(h);
  if (residue > kHermitianTolerance) throw NotHermitian(residue);

  const Index n = h.rows();
  CMatrix a = 0.5 * (h + h.adjoint());
  CMatrix v = CMatrix::Identity(n, n);
  const double target = kJacobiTolerance * std::max(1.0, a.norm());

  bool converged = detail::off_diagonal_norm(a) < target;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
    }
    converged = detail::off_diagonal_norm(a) < target;
  }
  if (!converged) {
    throw NoConvergence("hermitian_eigs: off-diagonal norm " +
                        std::to_string(detail::off_diagonal_norm(a)) + " after " +
                        std::to_string(kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return a(x, x).real() < a(y, y).real(); });

  EigenSystem out{RVector(n), CMatrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.values[k] = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

/// Exact propagator psi -> exp(-i h t) psi for a fixed Hermitian generator.
/// Decomposes once; apply() may then be called for any number of times t.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const CMatrix& h) : eig_(hermitian_eigs(h)) {}

  Index dim() const { return eig_.values.size(); }
  const EigenSystem& eigensystem() const { return eig_; }

  CVector apply(double t, const CVector& psi) const {
    if (psi.size() != dim()) {
      throw DimensionMismatch("SpectralPropagator: state has dimension " +
                              std::to_string(psi.size()) + ", generator " +
                              std::to_string(dim()));
    }
    CVector coeffs = eig_.vectors.adjoint() * psi;
    for (Index k = 0; k < coeffs.size(); ++k) coeffs[k] *= std::exp(-kI * (eig_.values[k] * t));
    return eig_.vectors * coeffs;
  }

  CMatrix unitary(double t) const {
    CVector phases(dim());
    for (Index k = 0; k < dim(); ++k) phases[k] = std::exp(-kI * (eig_.values[k] * t));
    return eig_.vectors * phases.asDiagonal() * eig_.vectors.adjoint();
  }

 private:
  EigenSystem eig_;
};

inline CVector matexp_action(const CMatrix& h, double t, const CVector& psi) {
  return SpectralPropagator(h).apply(t, psi);
}

}  // namespace rydcz
