// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file    qubit.hpp
 * @brief   Single-qubit states: Bloch-angle pure states, Pauli basis,
 *          Stokes vectors, and state-comparison metrics.
 */

#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "qtomo/linalg.hpp"

namespace qtomo {

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, theta in [0, pi], phi in [0, 2 pi).
class PureQubit {
 public:
  PureQubit(double theta, double phi) : theta_(theta), phi_(phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) throw ValidationError("PureQubit: non-finite angle");
    if (theta < 0.0 || theta > std::numbers::pi) throw ValidationError("PureQubit: theta must lie in [0, pi]");
    phi_ = std::fmod(phi, 2.0 * std::numbers::pi);
    if (phi_ < 0.0) phi_ += 2.0 * std::numbers::pi;
    if (phi_ >= 2.0 * std::numbers::pi) phi_ = 0.0;
  }

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  std::array<Complex, 2> amplitudes() const {
    return {Complex{std::cos(theta_ / 2.0), 0.0}, std::polar(std::sin(theta_ / 2.0), phi_)};
  }

 private:
  double theta_;
  double phi_;
};

struct StokesVector {
  double s0 = 1.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  double bloch_norm() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }
  std::array<double, 3> bloch() const { return {s1, s2, s3}; }
  bool operator==(const StokesVector&) const = default;
};

namespace pauli {

inline const Matrix2& sigma(std::size_t i) {
  static const std::array<Matrix2, 4> basis = {
      Matrix2{{1.0, 0.0}, {0.0, 1.0}},
      Matrix2{{0.0, 1.0}, {1.0, 0.0}},
      Matrix2{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}},
      Matrix2{{1.0, 0.0}, {0.0, -1.0}},
  };
  if (i > 3) throw ValidationError("pauli::sigma: index must be 0..3");
  return basis[i];
}

inline const Matrix2& I() { return sigma(0); }
inline const Matrix2& X() { return sigma(1); }
inline const Matrix2& Y() { return sigma(2); }
inline const Matrix2& Z() { return sigma(3); }

}  // namespace pauli

/// |psi><psi| for the given Bloch angles.
inline Matrix2 pure_density(const PureQubit& q) {
  const auto amp = q.amplitudes();
  return Matrix2{{amp[0] * std::conj(amp[0]), amp[0] * std::conj(amp[1])},
                 {amp[1] * std::conj(amp[0]), amp[1] * std::conj(amp[1])}};
}

/// S_i = Tr(sigma_i rho). Rejects non-density input.
inline StokesVector stokes_of(const Matrix2& rho) {
  require_density(rho, "stokes_of");
  std::array<double, 4> s{};
  for (std::size_t i = 0; i < 4; ++i) {
    const Complex t = trace(pauli::sigma(i) * rho);
    if (std::abs(t.imag()) >= 1e-9) throw ValidationError("stokes_of: non-real Pauli expectation");
    s[i] = t.real();
  }
  return {s[0], s[1], s[2], s[3]};
}

/// rho = (1/2) sum_i S_i sigma_i. Requires s0 == 1 and Bloch norm <= 1 + tol.
inline Matrix2 density_from_stokes(const StokesVector& s, double tol = kDefaultTol) {
  if (!std::isfinite(s.s0) || !std::isfinite(s.s1) || !std::isfinite(s.s2) || !std::isfinite(s.s3))
    throw ValidationError("density_from_stokes: non-finite Stokes parameter");
  if (std::abs(s.s0 - 1.0) > tol) throw ValidationError("density_from_stokes: s0 must equal 1");
  if (s.bloch_norm() > 1.0 + tol) throw ValidationError("density_from_stokes: Bloch vector outside the unit ball");
  return scale(scale(pauli::I(), s.s0) + scale(pauli::X(), s.s1) + scale(pauli::Y(), s.s2) +
                   scale(pauli::Z(), s.s3),
               0.5);
}

/// Tr(|i><i| rho), clamped to [0, 1] after a tolerance check.
template <std::size_t N>
double probability_of(const Matrix<N>& rho, std::size_t i, double tol = kDefaultTol) {
  if (i >= N) throw ValidationError("probability_of: basis index out of range");
  require_density(rho, "probability_of", tol);
  const double p = trace(Matrix<N>::projector(i) * rho).real();
  if (p < -tol || p > 1.0 + tol) throw ValidationError("probability_of: probability outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

/// <psi|rho|psi>.
inline double fidelity(const PureQubit& q, const Matrix2& rho) {
  require_density(rho, "fidelity");
  const auto amp = q.amplitudes();
  Complex f{0.0, 0.0};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) f += std::conj(amp[i]) * rho(i, j) * amp[j];
  return std::clamp(f.real(), 0.0, 1.0);
}

/// (1/2) sum |lambda_i| over the eigenvalues of a - b.
inline double trace_distance(const Matrix2& a, const Matrix2& b) {
  require_density(a, "trace_distance");
  require_density(b, "trace_distance");
  const auto eig = hermitian_eigen(a - b);
  double sum = 0.0;
  for (double v : eig.values) sum += std::abs(v);
  return 0.5 * sum;
}

}  // namespace qtomo
