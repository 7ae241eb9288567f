/* Copyright 2026 The gamma-dde Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GDDE_ODE_SOLVER_HPP
#define GDDE_ODE_SOLVER_HPP

#include <functional>
#include <limits>
#include <span>
#include <variant>
#include <vector>

namespace gdde {

using State = std::vector<double>;

/// dydt = f(t, y). Implementations write every component of dydt.
using OdeRhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// First-order system with its initial condition.
struct OdeSystem {
  OdeRhs rhs;
  State initial;
  double t0 = 0.0;

  std::size_t dimension() const noexcept { return initial.size(); }
};

struct FixedStep {
  double h = 1e-2;
};

struct AdaptiveStep {
  double rtol = 1e-10;
  double atol = 1e-10;
  /// Non-positive selects an automatic initial step.
  double h_init = 0.0;
  double h_min = 1e-14;
  double h_max = std::numeric_limits<double>::infinity();
};

struct OdeConfig {
  std::variant<FixedStep, AdaptiveStep> mode = AdaptiveStep{};
  long max_steps = 50'000'000;
};

/// Solution samples; states[i] is the state at times[i].
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  /// Component `index` across all samples.
  std::vector<double> component(std::size_t index) const;
};

/// Classical four-stage Runge-Kutta on the mesh t0 + n h. The final step is
/// shortened to land on t_end. Returns every mesh point including t0.
Trajectory rk4_fixed(const OdeRhs& rhs, State y0, double t0, double t_end, double h,
                     long max_steps = 50'000'000);

/// Dormand-Prince 5(4) with PI step-size control. Steps are clipped so every
/// requested output time is hit exactly; output_times must be non-decreasing
/// and not before t0.
Trajectory rk45_adaptive(const OdeRhs& rhs, State y0, double t0,
                         std::span<const double> output_times,
                         const AdaptiveStep& cfg, long max_steps = 50'000'000);

/// Dispatches on cfg.mode. Fixed mode samples the mesh state at each output
/// time, which must then coincide with mesh points up to round-off; use
/// rk4_fixed directly to get the full mesh.
Trajectory integrate(const OdeSystem& system, std::span<const double> output_times,
                     const OdeConfig& cfg);

/// Output grid t0, t0 + dt, ..., up to and including t_end (within dt * 1e-9).
std::vector<double> uniform_grid(double t0, double t_end, double dt);

}  // namespace gdde

#endif  // GDDE_ODE_SOLVER_HPP
