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

#include "gdde/problems.hpp"

#include <cmath>
#include <string>

#include "gdde/analysis.hpp"
#include "gdde/error.hpp"

namespace gdde {

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::linear:
      return "linear";
    case ProblemKind::nonlinear:
      return "nonlinear";
    case ProblemKind::linear_gamma:
      return "linear_gamma";
    case ProblemKind::custom_linear:
      return "custom-linear";
  }
  return "linear";
}

ProblemKind parse_problem_kind(std::string_view name) {
  if (name == "linear") return ProblemKind::linear;
  if (name == "nonlinear") return ProblemKind::nonlinear;
  if (name == "linear_gamma" || name == "linear-gamma") return ProblemKind::linear_gamma;
  if (name == "custom-linear" || name == "custom_linear") return ProblemKind::custom_linear;
  throw DomainError("unknown problem: " + std::string(name));
}

ScalarDelayRhs ProblemSpec::rhs() const {
  switch (kind) {
    case ProblemKind::linear:
      return [](double x, double conv) { return 0.8 * x - 1.1 * conv; };
    case ProblemKind::nonlinear: {
      const double K = carrying_capacity;
      return [K](double x, double conv) { return x - x * conv / K; };
    }
    case ProblemKind::linear_gamma:
    case ProblemKind::custom_linear: {
      const double a = alpha;
      const double b = beta;
      return [a, b](double x, double conv) { return a * x + b * conv; };
    }
  }
  throw DomainError("unhandled problem kind");
}

DdeProblem ProblemSpec::dde() const {
  return DdeProblem::scalar(rhs(), kernel(), history, t0, t_end);
}

ProblemSpec linear_test_problem(double j, double tau, double t_end) {
  ProblemSpec p;
  p.kind = ProblemKind::linear;
  p.j = j;
  p.tau = tau;
  p.alpha = 0.8;
  p.beta = -1.1;
  p.t_end = t_end;
  return p;
}

ProblemSpec nonlinear_test_problem(double j, double tau, double capacity, double t_end) {
  ProblemSpec p;
  p.kind = ProblemKind::nonlinear;
  p.j = j;
  p.tau = tau;
  p.carrying_capacity = capacity;
  p.t_end = t_end;
  return p;
}

ProblemSpec linear_gamma_problem(double tau, double j, double beta, double t_end) {
  ProblemSpec p;
  p.kind = ProblemKind::linear_gamma;
  p.j = j;
  p.tau = tau;
  p.alpha = -j / tau;
  p.beta = beta;
  p.history = HistoryFunction::exponential(1.0, char_root(tau, j, beta));
  p.t_end = t_end;
  return p;
}

ProblemSpec custom_linear_problem(double j, double tau, double alpha, double beta,
                                  double t_end) {
  ProblemSpec p;
  p.kind = ProblemKind::custom_linear;
  p.j = j;
  p.tau = tau;
  p.alpha = alpha;
  p.beta = beta;
  p.t_end = t_end;
  return p;
}

Trajectory solve_chain(const ProblemSpec& spec, ChainVariant variant,
                       std::span<const double> times, double tol, InitMode mode,
                       const ApproxConfig& cfg) {
  const ChainParams params = make_chain(variant, spec.j, spec.tau, cfg);
  const ChainOdeProblem chain =
      build_chain_system(spec.rhs(), params, spec.history, spec.t0, spec.t_end, mode);
  AdaptiveStep step;
  step.rtol = tol;
  step.atol = tol;
  return rk45_adaptive(chain.system().rhs, chain.initial_state(), spec.t0, times, step);
}

}  // namespace gdde
