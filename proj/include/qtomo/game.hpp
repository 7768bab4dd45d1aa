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
 * @file    game.hpp
 * @brief   Two-player quantization scheme: strategy unitaries, the appended
 *          initial state, evolution, and payoffs.
 *
 * Alice's unitary acts on the appended |0> qubit (first tensor factor) and
 * Bob's on the unknown qubit (second factor). Payoffs are available two
 * ways: the trace Tr(P rho_f), and an analytic expansion in the strategy
 * angles. The two must agree; the test suite holds them to 1e-10.
 */

#pragma once

#include <cmath>
#include <numbers>

#include "qtomo/linalg.hpp"
#include "qtomo/qubit.hpp"

namespace qtomo {

/// beta in [0, pi], alpha normalized into [0, 2 pi).
class Strategy {
 public:
  Strategy(double beta, double alpha) : beta_(beta), alpha_(alpha) {
    if (!std::isfinite(beta) || !std::isfinite(alpha)) throw ValidationError("Strategy: non-finite angle");
    if (beta < 0.0 || beta > std::numbers::pi) throw ValidationError("Strategy: beta must lie in [0, pi]");
    alpha_ = std::fmod(alpha, 2.0 * std::numbers::pi);
    if (alpha_ < 0.0) alpha_ += 2.0 * std::numbers::pi;
    if (alpha_ >= 2.0 * std::numbers::pi) alpha_ = 0.0;
  }

  double beta() const { return beta_; }
  double alpha() const { return alpha_; }
  bool operator==(const Strategy&) const = default;

 private:
  double beta_;
  double alpha_;
};

/// Payoff entries for one player, row = Alice's outcome, column = Bob's.
struct PayoffMatrix {
  double e00 = 0.0;
  double e01 = 0.0;
  double e10 = 0.0;
  double e11 = 0.0;

  std::array<double, 4> entries() const { return {e00, e01, e10, e11}; }
  PayoffMatrix negated() const { return {-e00, -e01, -e10, -e11}; }
  bool operator==(const PayoffMatrix&) const = default;
};

inline constexpr PayoffMatrix kAlicePayoff{1.0, -1.0, 1.0, -1.0};
inline constexpr PayoffMatrix kBobPayoff{-1.0, 1.0, -1.0, 1.0};

struct GameRun {
  Matrix4 rho_in;
  Strategy strategy_a;
  Strategy strategy_b;
  Matrix4 rho_f;
};

struct ClosedFormCoefficients {
  double chi;
  double xi;
  double omega;
  double eta;
  double phi_coef;
  double theta_coef;
};

/// cos(beta/2) R + sin(beta/2) P with R = diag(e^{i alpha}, e^{-i alpha}),
/// P|0> = -|1>, P|1> = |0>.
inline Matrix2 strategy_unitary(const Strategy& s) {
  const double c = std::cos(s.beta() / 2.0);
  const double sn = std::sin(s.beta() / 2.0);
  return Matrix2{{std::polar(c, s.alpha()), sn}, {-sn, std::polar(c, -s.alpha())}};
}

/// |0><0| (x) rho.
inline Matrix4 initial_state(const Matrix2& rho) {
  require_density(rho, "initial_state");
  return kron(Matrix2::projector(0), rho);
}

inline GameRun evolve(const Matrix4& rho_in, const Strategy& sa, const Strategy& sb) {
  require_density(rho_in, "evolve");
  const Matrix4 u = kron(strategy_unitary(sa), strategy_unitary(sb));
  return GameRun{rho_in, sa, sb, u * rho_in * dagger(u)};
}

inline Matrix4 payoff_operator(const PayoffMatrix& p) {
  return Matrix4::diagonal({p.e00, p.e01, p.e10, p.e11});
}

/// Tr(P rho_f).
inline double payoff_exact(const GameRun& run, const PayoffMatrix& p) {
  const Complex t = trace(payoff_operator(p) * run.rho_f);
  if (std::abs(t.imag()) >= 1e-9) throw ValidationError("payoff_exact: non-real payoff");
  return t.real();
}

inline ClosedFormCoefficients closed_form_coefficients(const Strategy& sa, const Strategy& sb) {
  const double ca2 = std::pow(std::cos(sa.beta() / 2.0), 2);
  const double sa2 = std::pow(std::sin(sa.beta() / 2.0), 2);
  const double cb2 = std::pow(std::cos(sb.beta() / 2.0), 2);
  const double sb2 = std::pow(std::sin(sb.beta() / 2.0), 2);
  const double sin_b = std::sin(sb.beta());
  return {ca2 * cb2, ca2 * sb2, sa2 * sb2, sa2 * cb2, 0.5 * ca2 * sin_b, 0.5 * sa2 * sin_b};
}

/// Analytic payoff for a pure input. Alice's alpha cancels and does not appear.
inline double payoff_closed_form(const PayoffMatrix& p, const Strategy& sa, const Strategy& sb, const PureQubit& q) {
  const auto k = closed_form_coefficients(sa, sb);
  const double th = q.theta();
  const double ph = q.phi();
  const double cos2 = std::pow(std::cos(th / 2.0), 2);
  const double sin2 = std::pow(std::sin(th / 2.0), 2);
  const double coherent = (p.e00 - p.e01) * k.phi_coef + (p.e10 - p.e11) * k.theta_coef;

  return (p.e00 * k.chi + p.e11 * k.omega + p.e01 * k.xi + p.e10 * k.eta) * cos2 +
         (p.e00 * k.xi + p.e11 * k.eta + p.e01 * k.chi + p.e10 * k.omega) * sin2 +
         coherent * std::cos(sb.alpha()) * std::sin(th) * std::cos(ph) +
         coherent * std::sin(sb.alpha()) * std::sin(th) * std::sin(ph);
}

}  // namespace qtomo
