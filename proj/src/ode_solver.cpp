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

#include "gdde/ode_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gdde/error.hpp"

namespace gdde {
namespace {

void check_finite(std::span<const double> y, double t, long step) {
  for (double v : y) {
    if (!std::isfinite(v)) {
      throw SolverError("non-finite state at t = " + std::to_string(t) + " (step " +
                            std::to_string(step) + ")",
                        step);
    }
  }
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (error weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

double initial_step(const OdeRhs& rhs, double t0, const State& y0, const State& f0,
                    const AdaptiveStep& cfg) {
  const std::size_t n = y0.size();
  double d0 = 0.0, d1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = cfg.atol + cfg.rtol * std::abs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / n);
  d1 = std::sqrt(d1 / n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, cfg.h_max);
  State y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  rhs(t0 + h0, y1, f1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = cfg.atol + cfg.rtol * std::abs(y0[i]);
    d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
  }
  d2 = std::sqrt(d2 / n) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::clamp(std::min(100.0 * h0, h1), cfg.h_min, cfg.h_max);
}

}  // namespace

std::vector<double> Trajectory::component(std::size_t index) const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.at(index));
  return out;
}

std::vector<double> uniform_grid(double t0, double t_end, double dt) {
  if (!(dt > 0.0)) throw DomainError("grid spacing must be positive");
  if (t_end < t0) throw DomainError("grid end precedes its start");
  const auto n = static_cast<long>(std::floor((t_end - t0) / dt + 1e-9));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (long i = 0; i <= n; ++i) grid.push_back(t0 + static_cast<double>(i) * dt);
  if (t_end - grid.back() > dt * 1e-9) grid.push_back(t_end);
  return grid;
}

Trajectory rk4_fixed(const OdeRhs& rhs, State y0, double t0, double t_end, double h,
                     long max_steps) {
  if (!(h > 0.0)) throw DomainError("rk4_fixed: step must be positive");
  if (t_end < t0) throw DomainError("rk4_fixed: t_end precedes t0");
  const double span = t_end - t0;
  const auto steps = static_cast<long>(std::ceil(span / h - 1e-9));
  if (steps > max_steps) throw SolverError("rk4_fixed: step budget exceeded");

  const std::size_t n = y0.size();
  Trajectory out;
  out.times.reserve(static_cast<std::size_t>(steps) + 1);
  out.states.reserve(static_cast<std::size_t>(steps) + 1);
  out.times.push_back(t0);
  out.states.push_back(y0);

  State k1(n), k2(n), k3(n), k4(n), tmp(n);
  State y = std::move(y0);
  for (long step = 0; step < steps; ++step) {
    const double t = t0 + static_cast<double>(step) * h;
    const double t_next = step + 1 == steps ? t_end : t0 + static_cast<double>(step + 1) * h;
    const double dt = t_next - t;
    rhs(t, y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    rhs(t + 0.5 * dt, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    rhs(t + 0.5 * dt, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(t_next, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    check_finite(y, t_next, step);
    out.times.push_back(t_next);
    out.states.push_back(y);
  }
  return out;
}

Trajectory rk45_adaptive(const OdeRhs& rhs, State y0, double t0,
                         std::span<const double> output_times,
                         const AdaptiveStep& cfg, long max_steps) {
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) {
    throw DomainError("rk45: tolerances must be positive");
  }
  if (!(cfg.h_min > 0.0) || cfg.h_max < cfg.h_min) {
    throw DomainError("rk45: require 0 < h_min <= h_max");
  }
  for (std::size_t i = 0; i < output_times.size(); ++i) {
    if (output_times[i] < t0 || (i > 0 && output_times[i] < output_times[i - 1])) {
      throw DomainError("rk45: output times must be non-decreasing and >= t0");
    }
  }

  const std::size_t n = y0.size();
  Trajectory out;
  out.times.reserve(output_times.size());
  out.states.reserve(output_times.size());

  State y = std::move(y0);
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y_new(n);
  double t = t0;
  rhs(t, y, k1);
  check_finite(k1, t, 0);

  double h = cfg.h_init > 0.0 ? std::clamp(cfg.h_init, cfg.h_min, cfg.h_max)
                              : initial_step(rhs, t, y, k1, cfg);
  double err_prev = 1e-4;
  long steps = 0;

  for (double target : output_times) {
    while (t < target) {
      if (++steps > max_steps) {
        throw SolverError("rk45: maximum number of steps exceeded", steps);
      }
      const double remaining = target - t;
      bool clipped = false;
      double dt = h;
      if (dt >= remaining * (1.0 - 1e-12)) {
        dt = remaining;
        clipped = true;
      }

      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * a21 * k1[i];
      rhs(t + c2 * dt, tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * (a31 * k1[i] + a32 * k2[i]);
      rhs(t + c3 * dt, tmp, k3);
      for (std::size_t i = 0; i < n; ++i) {
        tmp[i] = y[i] + dt * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      }
      rhs(t + c4 * dt, tmp, k4);
      for (std::size_t i = 0; i < n; ++i) {
        tmp[i] = y[i] + dt * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      }
      rhs(t + c5 * dt, tmp, k5);
      for (std::size_t i = 0; i < n; ++i) {
        tmp[i] = y[i] + dt * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                              a65 * k5[i]);
      }
      rhs(t + dt, tmp, k6);
      for (std::size_t i = 0; i < n; ++i) {
        y_new[i] = y[i] + dt * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                b6 * k6[i]);
      }
      const double t_new = clipped ? target : t + dt;
      rhs(t_new, y_new, k7);

      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double e = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                               e6 * k6[i] + e7 * k7[i]);
        const double sc = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / static_cast<double>(n));
      if (!std::isfinite(err)) err = 1e10;

      if (err <= 1.0) {
        check_finite(y_new, t_new, steps);
        t = t_new;
        y.swap(y_new);
        k1.swap(k7);
        const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.17) *
                           std::pow(err_prev, 0.04);
        err_prev = std::max(err, 1e-4);
        // A clipped step says nothing about the admissible step size.
        if (!clipped || fac < 1.0) {
          h = std::clamp(dt * std::clamp(fac, 0.2, 10.0), cfg.h_min, cfg.h_max);
        }
      } else {
        const double fac = std::max(0.2, 0.9 * std::pow(err, -0.2));
        h = dt * fac;
        if (h < cfg.h_min) {
          throw SolverError("rk45: step size underflow at t = " + std::to_string(t), steps);
        }
      }
    }
    out.times.push_back(target);
    out.states.push_back(y);
  }
  return out;
}

Trajectory integrate(const OdeSystem& system, std::span<const double> output_times,
                     const OdeConfig& cfg) {
  if (const auto* adaptive = std::get_if<AdaptiveStep>(&cfg.mode)) {
    return rk45_adaptive(system.rhs, system.initial, system.t0, output_times, *adaptive,
                         cfg.max_steps);
  }
  const auto& fixed = std::get<FixedStep>(cfg.mode);
  if (output_times.empty()) return {};
  const Trajectory mesh = rk4_fixed(system.rhs, system.initial, system.t0,
                                    output_times.back(), fixed.h, cfg.max_steps);
  Trajectory out;
  for (double t : output_times) {
    const auto it = std::lower_bound(mesh.times.begin(), mesh.times.end(),
                                     t - 1e-9 * fixed.h);
    if (it == mesh.times.end() || std::abs(*it - t) > 1e-9 * fixed.h) {
      throw DomainError("fixed-step output time is not a mesh point");
    }
    out.times.push_back(t);
    out.states.push_back(mesh.states[static_cast<std::size_t>(it - mesh.times.begin())]);
  }
  return out;
}

}  // namespace gdde
