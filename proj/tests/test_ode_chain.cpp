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

#include <gtest/gtest.h>

#include <cmath>

#include "gdde/approximations.hpp"
#include "gdde/chain_reduction.hpp"
#include "gdde/error.hpp"
#include "gdde/history.hpp"
#include "gdde/ode_solver.hpp"
#include "gdde/problems.hpp"
#include "oracles.hpp"

using namespace gdde;

namespace {

void decay(double, std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; }

void oscillator(double, std::span<const double> y, std::span<double> dy) {
  dy[0] = y[1];
  dy[1] = -y[0];
}

}  // namespace

TEST(OdeSolver, Rk4FourthOrder) {
  double prev = 0.0;
  for (double h : {0.1, 0.05, 0.025}) {
    const Trajectory tr = rk4_fixed(decay, {1.0}, 0.0, 2.0, h);
    const double err = std::abs(tr.states.back()[0] - std::exp(-2.0));
    if (prev > 0.0) EXPECT_NEAR(std::log2(prev / err), 4.0, 0.15);
    prev = err;
  }
}

TEST(OdeSolver, Rk45HitsOutputTimesAccurately) {
  const std::vector<double> times = uniform_grid(0.0, 10.0, 0.5);
  AdaptiveStep cfg;
  cfg.rtol = 1e-11;
  cfg.atol = 1e-11;
  const Trajectory tr = rk45_adaptive(oscillator, {0.0, 1.0}, 0.0, times, cfg);
  ASSERT_EQ(tr.times.size(), times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_DOUBLE_EQ(tr.times[k], times[k]);
    EXPECT_NEAR(tr.states[k][0], std::sin(times[k]), 1e-9);
  }
}

TEST(OdeSolver, UniformGridIncludesEndpoint) {
  const auto g = uniform_grid(0.0, 1.0, 0.1);
  ASSERT_EQ(g.size(), 11u);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
}

TEST(OdeSolver, Rk45ReportsBlowUp) {
  auto blow = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = y[0] * y[0]; };
  const std::vector<double> times = {0.0, 2.0};
  EXPECT_THROW(rk45_adaptive(blow, {1.0}, 0.0, times, AdaptiveStep{}), SolverError);
}

TEST(History, IntegralsAgainstQuadrature) {
  const std::vector<double> rates = {1.5, 1.5, 0.7};
  const HistoryFunction e = HistoryFunction::exponential(0.1, 0.1);
  EXPECT_NEAR(history_integral(e, 0.0, rates), 0.1 * 1.5 / 1.6 * 1.5 / 1.6 * 0.7 / 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(history_integral(HistoryFunction::constant(2.0), 0.0, rates), 2.0);
  EXPECT_DOUBLE_EQ(history_integral(HistoryFunction::point_mass(1.0), 0.0, rates), 0.0);

  const HistoryFunction c = HistoryFunction::custom([](double s) { return std::cos(s); });
  const std::vector<double> erl = {2.0, 2.0, 2.0};
  const double want =
      oracle::half_line([](double s) { return std::cos(-s) * oracle::gamma_density(3.0, 2.0, s); });
  EXPECT_NEAR(history_integral(c, 0.0, erl), want, 1e-9);
}

TEST(History, ExponentialRejectsDivergentIntegral) {
  const std::vector<double> rates = {1.0, 2.0};
  EXPECT_THROW(history_integral(HistoryFunction::exponential(1.0, -3.0), 0.0, rates), DomainError);
}

TEST(ChainReduction, ErlangChainMatchesIndependentOracle) {
  const ProblemSpec spec = nonlinear_test_problem(3.0, 2.25, 2.0, 10.0);
  const std::vector<double> times = uniform_grid(0.0, 10.0, 0.5);
  const auto got = solve_chain(spec, ChainVariant::erlang, times, 1e-11).component(0);
  const auto want = oracle::erlang_chain([](double x, double i) { return x - x * i / 2.0; }, 3,
                                         2.25, 1.0, 0.0, times);
  for (std::size_t k = 0; k < times.size(); ++k) EXPECT_NEAR(got[k], want[k], 1e-8);
}

TEST(ChainReduction, ConstantHistoryIsEquilibrium) {
  // With x' = x - x I / 2 and psi = 2 the solution stays at 2 for every chain.
  ProblemSpec spec = nonlinear_test_problem(2.4, 1.0, 2.0, 5.0);
  spec.history = HistoryFunction::constant(2.0);
  const std::vector<double> times = {0.0, 2.5, 5.0};
  for (ChainVariant v : {ChainVariant::erlang, ChainVariant::fixed, ChainVariant::smoothed}) {
    for (InitMode m : {InitMode::paper_literal, InitMode::kernel_consistent}) {
      const auto x = solve_chain(spec, v, times, 1e-10, m).component(0);
      for (double xi : x) EXPECT_NEAR(xi, 2.0, 1e-9) << to_string(v) << ' ' << to_string(m);
    }
  }
}

TEST(ChainReduction, DelayedTermAtStartReproducesHistoryConvolution) {
  const HistoryFunction h = HistoryFunction::exponential(0.1, 0.1);
  const ChainParams p = fixed_hypoexp(2.57, 1.0);
  const ChainOdeProblem chain = build_chain_system([](double x, double i) { return x - i; }, p, h,
                                                   0.0, 1.0, InitMode::kernel_consistent);
  // int psi(-s) g(s) ds for the hypoexponential kernel is psi-scale times the MGF at -rho.
  double mgf = 1.0;
  for (double r : p.rates()) mgf *= r / (r + 0.1);
  EXPECT_NEAR(chain.delayed_term(chain.initial_state()), 0.1 * mgf, 1e-14);
  EXPECT_EQ(chain.dimension(), static_cast<std::size_t>(p.stages + 1));
}

TEST(ChainReduction, PointMassHistory) {
  const ChainParams p = erlang_approx(3.0, 1.0);
  const ChainOdeProblem chain = build_chain_system([](double x, double i) { return -x + i; }, p,
                                                   HistoryFunction::point_mass(0.5, 1.0), 0.0, 1.0);
  const State& y = chain.initial_state();
  EXPECT_DOUBLE_EQ(y[0], 1.0);
  EXPECT_GT(y[1], 0.0);
  EXPECT_DOUBLE_EQ(y[2], 0.0);
  EXPECT_DOUBLE_EQ(y[3], 0.0);
}

TEST(ChainReduction, SystemOutlivesProblem) {
  OdeSystem sys;
  {
    const ChainOdeProblem chain = build_chain_system([](double x, double i) { return -x + i; },
                                                     erlang_approx(2.0, 1.0),
                                                     HistoryFunction::constant(1.0), 0.0, 1.0);
    sys = chain.system();
  }
  State dy(sys.dimension());
  sys.rhs(0.0, sys.initial, dy);
  for (double v : dy) EXPECT_NEAR(v, 0.0, 1e-15);
}
