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

#ifndef GDDE_CHAIN_REDUCTION_HPP
#define GDDE_CHAIN_REDUCTION_HPP

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "gdde/approximations.hpp"
#include "gdde/history.hpp"
#include "gdde/ode_solver.hpp"

namespace gdde {

/// Right-hand side F(x, I) of a scalar distributed-delay equation, where I is
/// the value of the delayed convolution.
using ScalarDelayRhs = std::function<double(double x, double conv)>;

/// How the initial chain compartments are derived from the history.
enum class InitMode {
  /// Erlang kernels for the common stages, single-exponential kernels for the
  /// two tail stages.
  paper_literal,
  /// Cumulative convolution kernels: compartment i uses the density of the
  /// first i stages.
  kernel_consistent,
};

std::string_view to_string(InitMode mode);
InitMode parse_init_mode(std::string_view name);

/// Linear-chain ODE equivalent of a distributed-delay equation whose kernel
/// is a sequential chain of exponential stages.
///
/// State layout: [Y, B_1, ..., B_n] with
///   Y'   = F(Y, r_n B_n)
///   B_1' = Y - r_1 B_1
///   B_i' = r_{i-1} B_{i-1} - r_i B_i,   i = 2..n
/// where r_n B_n equals the convolution of Y against the chain density.
class ChainOdeProblem {
 public:
  ChainOdeProblem(ScalarDelayRhs rhs, ChainParams params, HistoryFunction history,
                  double t0, double t_end, State initial);

  const ChainParams& params() const noexcept { return params_; }
  const std::vector<double>& rates() const noexcept { return rates_; }
  const HistoryFunction& history() const noexcept { return history_; }
  double t0() const noexcept { return t0_; }
  double t_end() const noexcept { return t_end_; }
  const State& initial_state() const noexcept { return initial_; }
  std::size_t dimension() const noexcept { return initial_.size(); }

  /// r_n * B_n (mu B_n for hypoexponential chains, b A_[j] for Erlang).
  double delayed_term(std::span<const double> state) const;

  void evaluate(double t, std::span<const double> y, std::span<double> dydt) const;
  OdeSystem system() const;

 private:
  ScalarDelayRhs rhs_;
  ChainParams params_;
  std::vector<double> rates_;
  HistoryFunction history_;
  double t0_;
  double t_end_;
  State initial_;
};

/// Requires params.variant == erlang. A_i(0) = (1/b) int psi(t0-s) g_b^i(s) ds.
ChainOdeProblem build_erlang_system(ScalarDelayRhs rhs, const ChainParams& params,
                                    const HistoryFunction& history, double t0,
                                    double t_end);

/// Requires a hypoexponential variant (fixed, smoothed, smoothed_regularized).
ChainOdeProblem build_hypoexp_system(ScalarDelayRhs rhs, const ChainParams& params,
                                     const HistoryFunction& history, double t0,
                                     double t_end,
                                     InitMode mode = InitMode::paper_literal);

/// Dispatches on params.variant.
ChainOdeProblem build_chain_system(ScalarDelayRhs rhs, const ChainParams& params,
                                   const HistoryFunction& history, double t0,
                                   double t_end,
                                   InitMode mode = InitMode::paper_literal);

inline double delayed_term(const ChainOdeProblem& problem, std::span<const double> state) {
  return problem.delayed_term(state);
}

}  // namespace gdde

#endif  // GDDE_CHAIN_REDUCTION_HPP
