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
 * @file    tomography.hpp
 * @brief   Single-qubit tomography through game payoffs.
 *
 * Three fixed strategy settings turn Alice's payoff into one Stokes
 * parameter each:
 *
 *   step 1: beta_A = beta_B = alpha_B = pi/2  ->  S2 = sin(theta) sin(phi)
 *   step 2: beta_A = beta_B = pi/2, alpha_B = 0  ->  S1 = sin(theta) cos(phi)
 *   step 3: beta_A = beta_B = 0  ->  S3 = cos(theta)
 *
 * Bob's payoff is the negative in every step. Finite-shot estimates sample
 * computational-basis outcomes of rho_f and average the +-1 payoff entries.
 *
 * Randomness: every draw comes from a std::mt19937_64 seeded with a
 * SplitMix64 mix of (master seed, index). Uniforms are built from the top
 * 53 bits of each output, so results are bit-reproducible across standard
 * libraries.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string_view>

#include "qtomo/game.hpp"
#include "qtomo/linalg.hpp"
#include "qtomo/qubit.hpp"

namespace qtomo {

enum class StepLabel { S1, S2, S3 };

inline std::string_view to_string(StepLabel l) {
  switch (l) {
    case StepLabel::S1:
      return "S1";
    case StepLabel::S2:
      return "S2";
    case StepLabel::S3:
      return "S3";
  }
  return "?";
}

struct ProtocolStep {
  StepLabel label;
  Strategy strategy_a;
  Strategy strategy_b;
  PayoffMatrix payoff_a;
  PayoffMatrix payoff_b;
};

struct SampleEstimate {
  double value = 0.0;
  std::int64_t shots = 0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  StepLabel step_label = StepLabel::S1;

  bool operator==(const SampleEstimate&) const = default;
};

struct TomographyResult {
  StokesVector stokes_est;
  std::optional<std::array<SampleEstimate, 3>> per_step;  // protocol order; empty in exact mode
  Matrix2 rho_hat;
  bool projected = false;
  std::optional<double> fidelity;
  std::optional<double> trace_dist;

  bool operator==(const TomographyResult&) const = default;
};

/// The three canonical steps, in protocol order (S2, S1, S3). Alice's alpha is 0 throughout.
inline std::array<ProtocolStep, 3> protocol_steps() {
  constexpr double h = std::numbers::pi / 2.0;
  return {{
      {StepLabel::S2, Strategy{h, 0.0}, Strategy{h, h}, kAlicePayoff, kBobPayoff},
      {StepLabel::S1, Strategy{h, 0.0}, Strategy{h, 0.0}, kAlicePayoff, kBobPayoff},
      {StepLabel::S3, Strategy{0.0, 0.0}, Strategy{0.0, 0.0}, kAlicePayoff, kBobPayoff},
  }};
}

inline GameRun run_step(const Matrix2& rho, const ProtocolStep& step) {
  return evolve(initial_state(rho), step.strategy_a, step.strategy_b);
}

namespace detail {

inline void assign(StokesVector& s, StepLabel l, double v) {
  switch (l) {
    case StepLabel::S1:
      s.s1 = v;
      break;
    case StepLabel::S2:
      s.s2 = v;
      break;
    case StepLabel::S3:
      s.s3 = v;
      break;
  }
}

inline double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Stokes vector read off Alice's exact payoffs.
inline StokesVector exact_stokes(const Matrix2& rho) {
  require_density(rho, "exact_stokes");
  StokesVector s{1.0, 0.0, 0.0, 0.0};
  for (const auto& step : protocol_steps()) detail::assign(s, step.label, payoff_exact(run_step(rho, step), step.payoff_a));
  return s;
}

/// Outcome probabilities of rho_f over |00>, |01>, |10>, |11>.
inline std::array<double, 4> measurement_distribution(const GameRun& run) {
  std::array<double, 4> p{};
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = run.rho_f(i, i).real();
    if (d < -kDefaultTol) throw ValidationError("measurement_distribution: negative diagonal in rho_f");
    p[i] = std::clamp(d, 0.0, 1.0);
    total += p[i];
  }
  if (std::abs(total - 1.0) > kDefaultTol) throw ValidationError("measurement_distribution: rho_f is not normalized");
  return p;
}

/// SplitMix64 finalizer over (seed, index); distinct indices give distinct sub-seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/**
 * Monte Carlo estimate of a +-1 payoff from `shots` computational-basis
 * draws of rho_f. std_error is the population standard deviation of the
 * drawn payoffs over sqrt(shots), which never exceeds 1/sqrt(shots).
 */
inline SampleEstimate sample_payoff(const GameRun& run, const PayoffMatrix& p, std::int64_t shots, std::uint64_t seed,
                                    StepLabel label = StepLabel::S1) {
  if (shots < 1) throw ValidationError("sample_payoff: shots must be >= 1");
  const auto entries = p.entries();
  for (double e : entries)
    if (e != 1.0 && e != -1.0) throw ValidationError("sample_payoff: payoff entries must be +1 or -1");

  const auto probs = measurement_distribution(run);
  std::array<double, 4> cdf{};
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    acc += probs[i];
    cdf[i] = acc;
    if (probs[i] > 0.0) last_nonzero = i;
  }

  std::mt19937_64 gen(seed);
  std::int64_t plus = 0;
  for (std::int64_t k = 0; k < shots; ++k) {
    const double u = detail::uniform01(gen);
    std::size_t outcome = last_nonzero;
    for (std::size_t i = 0; i < 4; ++i) {
      if (u < cdf[i] && probs[i] > 0.0) {
        outcome = i;
        break;
      }
    }
    if (entries[outcome] > 0.0) ++plus;
  }

  const double m = static_cast<double>(shots);
  const double mean = (2.0 * static_cast<double>(plus) - m) / m;
  const double var = std::max(0.0, 1.0 - mean * mean);
  return SampleEstimate{mean, shots, std::sqrt(var) / std::sqrt(m), seed, label};
}

/// Splits a total shot budget evenly across the three steps; the remainder goes to the S3 step.
inline std::array<std::int64_t, 3> split_shots(std::int64_t total) {
  if (total < 3) throw ValidationError("split_shots: need at least one shot per step");
  const std::int64_t base = total / 3;
  const auto steps = protocol_steps();
  std::array<std::int64_t, 3> out{base, base, base};
  for (std::size_t i = 0; i < 3; ++i)
    if (steps[i].label == StepLabel::S3) out[i] += total % 3;
  return out;
}

struct Reconstruction {
  Matrix2 rho;
  bool projected = false;
};

/**
 * Density matrix from a Stokes vector. With `project`, a Bloch vector
 * longer than 1 is rescaled radially onto the sphere and the flag is set;
 * without it such input is rejected.
 */
inline Reconstruction reconstruct(const StokesVector& s, bool project) {
  if (!std::isfinite(s.s1) || !std::isfinite(s.s2) || !std::isfinite(s.s3))
    throw ValidationError("reconstruct: non-finite Stokes parameter");
  if (std::abs(s.s0 - 1.0) > kDefaultTol) throw ValidationError("reconstruct: s0 must equal 1");
  const double norm = s.bloch_norm();
  if (norm > 1.0) {
    if (!project) {
      if (norm > 1.0 + kDefaultTol) throw ValidationError("reconstruct: Bloch vector outside the unit ball");
      return {density_from_stokes(s), false};
    }
    const StokesVector r{1.0, s.s1 / norm, s.s2 / norm, s.s3 / norm};
    return {density_from_stokes(r), true};
  }
  return {density_from_stokes(s), false};
}

/// Sampled Stokes estimates with per-step shot counts in protocol order.
inline TomographyResult estimate_stokes(const Matrix2& rho, const std::array<std::int64_t, 3>& shots,
                                        std::uint64_t seed) {
  require_density(rho, "estimate_stokes");
  TomographyResult out;
  out.stokes_est = StokesVector{1.0, 0.0, 0.0, 0.0};
  std::array<SampleEstimate, 3> per_step{};
  const auto steps = protocol_steps();
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& step = steps[i];
    per_step[i] = sample_payoff(run_step(rho, step), step.payoff_a, shots[i], derive_seed(seed, i), step.label);
    detail::assign(out.stokes_est, step.label, per_step[i].value);
  }
  out.per_step = per_step;
  const auto rec = reconstruct(out.stokes_est, true);
  out.rho_hat = rec.rho;
  out.projected = rec.projected;
  return out;
}

inline TomographyResult estimate_stokes(const Matrix2& rho, std::int64_t shots_per_step, std::uint64_t seed) {
  return estimate_stokes(rho, {shots_per_step, shots_per_step, shots_per_step}, seed);
}

namespace detail {

inline void finish(TomographyResult& r, const PureQubit& q) {
  const auto rec = reconstruct(r.stokes_est, true);
  r.rho_hat = rec.rho;
  r.projected = rec.projected;
  r.fidelity = fidelity(q, r.rho_hat);
  r.trace_dist = trace_distance(pure_density(q), r.rho_hat);
}

}  // namespace detail

/// Sampled tomography of a known pure state, scored against it.
inline TomographyResult run_tomography(const PureQubit& q, std::int64_t shots_per_step, std::uint64_t seed) {
  TomographyResult r = estimate_stokes(pure_density(q), shots_per_step, seed);
  detail::finish(r, q);
  return r;
}

/// Same as run_tomography but from exact payoffs.
inline TomographyResult exact_tomography(const PureQubit& q) {
  TomographyResult r;
  r.stokes_est = exact_stokes(pure_density(q));
  detail::finish(r, q);
  return r;
}

enum class Axis { X, Y, Z };

struct Plane {
  Axis axis;
  double offset;
};

struct BlochGeometry {
  std::array<Plane, 3> planes;  // measurement order z, y, x
  std::array<double, 3> point;  // (x, y, z)
};

/// Point where three mutually orthogonal axis-aligned planes meet; any order.
inline std::array<double, 3> intersect_planes(const std::array<Plane, 3>& planes) {
  std::array<double, 3> point{};
  std::array<bool, 3> seen{};
  for (const auto& p : planes) {
    const auto i = static_cast<std::size_t>(p.axis);
    if (seen[i]) throw ValidationError("intersect_planes: planes must be mutually orthogonal");
    seen[i] = true;
    point[i] = p.offset;
  }
  return point;
}

/// Planes x = S1, y = S2, z = S3 confining the state, and their intersection.
inline BlochGeometry bloch_geometry(const PureQubit& q) {
  const StokesVector s = exact_stokes(pure_density(q));
  BlochGeometry g{{{{Axis::Z, s.s3}, {Axis::Y, s.s2}, {Axis::X, s.s1}}}, {}};
  g.point = intersect_planes(g.planes);
  return g;
}

}  // namespace qtomo
