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

// Walk through the protocol for one state: exact payoffs per step, then a
// finite-shot reconstruction.

#include <cstdio>
#include <numbers>

#include "qtomo/qtomo.hpp"

int main() {
  using namespace qtomo;

  const PureQubit q{std::numbers::pi / 3, std::numbers::pi / 5};
  const Matrix2 rho = pure_density(q);

  for (const auto& step : protocol_steps()) {
    const GameRun run = run_step(rho, step);
    std::printf("%s  alice %+.6f  bob %+.6f\n", to_string(step.label).data(), payoff_exact(run, step.payoff_a),
                payoff_exact(run, step.payoff_b));
  }

  const TomographyResult r = run_tomography(q, 20000, 2024);
  std::printf("estimate (%.4f, %.4f, %.4f)  fidelity %.6f  trace distance %.6f\n", r.stokes_est.s1,
              r.stokes_est.s2, r.stokes_est.s3, *r.fidelity, *r.trace_dist);
}
