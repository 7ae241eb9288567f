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

#ifndef GDDE_PROBLEMS_HPP
#define GDDE_PROBLEMS_HPP

#include <functional>
#include <span>
#include <string_view>

#include "gdde/approximations.hpp"
#include "gdde/chain_reduction.hpp"
#include "gdde/fcrk.hpp"
#include "gdde/history.hpp"
#include "gdde/ode_solver.hpp"

namespace gdde {

enum class ProblemKind {
  /// x' = 4/5 x - 11/10 I.
  linear,
  /// x' = x - x I / K.
  nonlinear,
  /// x' = alpha x + beta I with alpha = -a and eigenfunction history.
  linear_gamma,
  /// x' = alpha x + beta I with free alpha, beta.
  custom_linear,
};

std::string_view to_string(ProblemKind kind);
/// Accepts "linear", "nonlinear", "linear_gamma", "custom-linear" (also
/// "custom_linear").
ProblemKind parse_problem_kind(std::string_view name);

/// A scalar gamma-distributed DDE with mean delay tau and shape j.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::linear;
  double j = 1.0;
  double tau = 1.0;
  double alpha = 0.8;
  double beta = -1.1;
  double carrying_capacity = 2.0;
  HistoryFunction history = HistoryFunction::constant(1.0);
  double t0 = 0.0;
  double t_end = 10.0;

  double rate() const noexcept { return j / tau; }
  GammaKernel kernel() const { return GammaKernel(j, rate()); }
  ScalarDelayRhs rhs() const;
  DdeProblem dde() const;
};

ProblemSpec linear_test_problem(double j, double tau = 1.0, double t_end = 10.0);
ProblemSpec nonlinear_test_problem(double j, double tau = 2.25, double capacity = 2.0,
                                   double t_end = 10.0);
/// alpha = -j/tau and history e^{lambda s} with lambda from char_root.
ProblemSpec linear_gamma_problem(double tau, double j, double beta, double t_end = 10.0);
ProblemSpec custom_linear_problem(double j, double tau, double alpha, double beta,
                                  double t_end = 10.0);

/// Chain-ODE approximation of the problem integrated by rk45 at the given
/// tolerance (rtol = atol) and sampled at `times`.
Trajectory solve_chain(const ProblemSpec& spec, ChainVariant variant,
                       std::span<const double> times, double tol = 1e-10,
                       InitMode mode = InitMode::paper_literal,
                       const ApproxConfig& cfg = {});

}  // namespace gdde

#endif  // GDDE_PROBLEMS_HPP
