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
#include <filesystem>

#include "gdde/epi.hpp"
#include "gdde/epi_io.hpp"
#include "gdde/error.hpp"
#include "gdde/nelder_mead.hpp"
#include "gdde/special_functions.hpp"
#include "oracles.hpp"

using namespace gdde;

TEST(Sir, PopulationIsConserved) {
  for (ChainVariant v : {ChainVariant::fixed, ChainVariant::smoothed_regularized}) {
    SirParams p;
    p.j = 3.4;
    p.variant = v;
    const Trajectory tr = simulate_sir(p, default_obs_times(60, 1.0));
    for (const State& y : tr.states) {
      double s = 0.0;
      for (double v2 : y) s += v2;
      EXPECT_NEAR(s, 1.0, 1e-10);
    }
  }
}

TEST(Sir, IncidenceIsNonNegativeAndSumsToDepletion) {
  SirParams p;
  p.obs_times = default_obs_times();
  const auto inc = simulate_incidence(p);
  ASSERT_EQ(inc.size(), 120u);
  double total = 0.0;
  for (double v : inc) {
    EXPECT_GE(v, 0.0);
    total += v;
  }
  const Trajectory tr = simulate_sir(p, {0.0, 120.0});
  EXPECT_NEAR(total, p.population * (tr.states[0][0] - tr.states[1][0]), 1e-8);
}

TEST(Sir, ChainRatesFollowVariant) {
  SirParams p;
  p.j = 4.0;
  const SirChain c = build_sir_chain(p);
  EXPECT_EQ(c.stages(), 4u);
  for (double r : c.rates) EXPECT_DOUBLE_EQ(r, 0.8);
  EXPECT_FALSE(c.stiff);
  p.eps = 1.5;
  EXPECT_THROW(build_sir_chain(p), DomainError);
}

TEST(Serial, DensityNormalizesAndMatchesSurvival) {
  for (double j : {1.3, 4.0, 9.5}) {
    const double tau = 5.0;
    EXPECT_NEAR(oracle::half_line([&](double t) { return serial_density(j, tau, t); }), 1.0, 1e-8);
    EXPECT_NEAR(serial_density(j, tau, 2.0), regularized_gamma_q(j, j * 2.0 / tau) / tau, 1e-15);
    EXPECT_NEAR(std::exp(log_serial_density(j, tau, 7.0)), serial_density(j, tau, 7.0), 1e-15);
  }
}

TEST(Serial, SampleMean) {
  Rng rng(8);
  const double j = 4.0, tau = 5.0;
  double s = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) s += sample_serial(rng, j, tau);
  EXPECT_NEAR(s / n, tau * (j + 1) / (2 * j), 0.03);
}

TEST(Poisson, MomentsInBothRegimes) {
  Rng rng(12);
  for (double mu : {0.0, 2.5, 29.0, 31.0, 400.0}) {
    const int n = 100000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(sample_poisson(rng, mu));
      s1 += x;
      s2 += x * x;
    }
    const double mean = s1 / n;
    EXPECT_NEAR(mean, mu, 5.0 * std::sqrt(mu / n) + 1e-12) << mu;
    EXPECT_NEAR(s2 / n - mean * mean, mu, 0.05 * mu + 1e-12) << mu;
  }
}

TEST(Poisson, LogPmf) {
  EXPECT_NEAR(poisson_log_pmf(3, 2.0), 3 * std::log(2.0) - 2.0 - std::log(6.0), 1e-14);
  EXPECT_DOUBLE_EQ(poisson_log_pmf(0, 0.0), 0.0);
  EXPECT_EQ(poisson_log_pmf(1, 0.0), -INFINITY);
}

TEST(EpiData, SeededSynthesisIsReproducible) {
  SirParams p;
  p.obs_times = default_obs_times();
  Rng a(7), b(7);
  const EpiData x = synthesize_data(p, 50, a);
  const EpiData y = synthesize_data(p, 50, b);
  EXPECT_EQ(x.cases, y.cases);
  EXPECT_EQ(x.serial, y.serial);
  EXPECT_EQ(x.serial.size(), 50u);
}

TEST(EpiData, CsvRoundTrip) {
  SirParams p;
  p.obs_times = default_obs_times(20);
  Rng rng(1);
  const EpiData d = synthesize_data(p, 10, rng);
  const auto dir = std::filesystem::temp_directory_path() / "gdde_epi_io_test";
  std::filesystem::create_directories(dir);
  write_cases_csv((dir / "c.csv").string(), d);
  write_serial_csv((dir / "s.csv").string(), d);
  EpiData back;
  read_cases_csv((dir / "c.csv").string(), back);
  read_serial_csv((dir / "s.csv").string(), back);
  EXPECT_EQ(back.times, d.times);
  EXPECT_EQ(back.cases, d.cases);
  EXPECT_EQ(back.serial, d.serial);
  EXPECT_THROW(read_cases_csv((dir / "s.csv").string(), back), DomainError);
  std::filesystem::remove_all(dir);
}

TEST(NelderMead, Rosenbrock) {
  auto f = [](std::span<const double> x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  NelderMeadOptions o;
  o.initial_step = {0.5, 0.5};
  o.f_tol = 1e-14;
  o.x_tol = 1e-10;
  const NelderMeadResult r = nelder_mead(f, {-1.2, 1.0}, o);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], 1.0, 1e-5);
}

TEST(Fit, RecoversParametersFromNoiselessData) {
  SirParams truth;
  truth.obs_times = default_obs_times();
  EpiData d;
  d.times = truth.obs_times;
  for (double m : simulate_incidence(truth)) d.cases.push_back(std::lround(m));
  Rng rng(0);
  for (int l = 0; l < 5000; ++l) d.serial.push_back(sample_serial(rng, truth.j, truth.tau));
  SirParams init = truth;
  init.beta = 0.3;
  init.tau = 3.0;
  init.j = 2.5;
  init.eps = 1e-2;
  const FitResult r = mle_fit(d, init);
  EXPECT_NEAR(r.params.beta, 0.5, 0.025);
  EXPECT_NEAR(r.params.tau, 5.0, 0.25);
  EXPECT_NEAR(r.params.j, 4.0, 0.5);
  SirParams at_truth = truth;
  at_truth.variant = ChainVariant::smoothed_regularized;
  EXPECT_GE(r.loglik, log_likelihood(at_truth, d) - 1e-6);
}
