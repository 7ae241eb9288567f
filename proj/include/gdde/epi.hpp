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

#ifndef GDDE_EPI_HPP
#define GDDE_EPI_HPP

#include <vector>

#include "gdde/approximations.hpp"
#include "gdde/ode_solver.hpp"
#include "gdde/rng.hpp"

namespace gdde {

/// SIR model with a gamma-distributed infectious period of mean tau and
/// shape j, replaced by a chain of exponential stages.
struct SirParams {
  double beta = 0.5;
  double tau = 5.0;
  double j = 4.0;
  double eps = 1e-3;
  double population = 1e3;
  /// Observation times t_1 < ... < t_K; increments start from t_0 = 0.
  std::vector<double> obs_times;
  ChainVariant variant = ChainVariant::fixed;
  ApproxConfig approx;

  double r0() const noexcept { return beta * tau; }
};

/// t_k = k * dt for k = 1..K.
std::vector<double> default_obs_times(int count = 120, double dt = 1.0);

/// State layout [S, I_1, ..., I_n, R].
struct SirChain {
  ChainParams chain;
  std::vector<double> rates;
  OdeSystem system;
  bool stiff = false;

  std::size_t stages() const noexcept { return rates.size(); }
};

/// Validates params and builds the chain with S(0) = 1 - eps, I_1(0) = eps.
SirChain build_sir_chain(const SirParams& params);

/// Trajectory of the chain at the given times (t0 = 0) with rk45.
Trajectory simulate_sir(const SirParams& params, const std::vector<double>& times,
                        double tol = 1e-10);

/// population * (S(t_{k-1}) - S(t_k)) over params.obs_times, clamped at 0.
std::vector<double> simulate_incidence(const SirParams& params, double tol = 1e-10);

/// h(t) = Q(j, j t / tau) / tau.
double serial_density(double j, double tau, double t);
double log_serial_density(double j, double tau, double t);
double sample_serial(Rng& rng, double j, double tau);

/// Poisson variate; inversion below mean 30, PTRD rejection above.
long sample_poisson(Rng& rng, double mean);
/// log of e^{-mu} mu^x / x!.
double poisson_log_pmf(long x, double mu);

struct EpiData {
  std::vector<double> times;
  std::vector<long> cases;
  std::vector<double> serial;
};

/// Poisson cases at params.obs_times and `serial_count` serial intervals.
EpiData synthesize_data(const SirParams& params, int serial_count, Rng& rng);

/// Case log-likelihood at data.times (params.obs_times is ignored) plus the
/// serial-interval log density. Returns -inf when a positive count meets a
/// zero mean.
double log_likelihood(const SirParams& params, const EpiData& data);

struct FitBounds {
  double beta_min = 1e-3, beta_max = 10.0;
  double tau_min = 0.1, tau_max = 100.0;
  double j_min = 1.01, j_max = 30.0;
  double eps_min = 1e-8, eps_max = 0.5;
};

struct FitOptions {
  int max_evals = 4000;
  int restarts = 2;
  ChainVariant variant = ChainVariant::smoothed_regularized;
};

struct FitResult {
  SirParams params;
  double loglik = 0.0;
  int n_evals = 0;
  bool converged = false;
  std::vector<double> trace;
};

/// Nelder-Mead maximum likelihood over (log beta, log tau, j, log eps), each
/// clamped into the bounds box. `init` supplies the start and the fixed
/// population. Throws SolverError when the evaluation budget runs out
/// without a finite objective.
FitResult mle_fit(const EpiData& data, const SirParams& init, const FitBounds& bounds = {},
                  const FitOptions& options = {});

}  // namespace gdde

#endif  // GDDE_EPI_HPP
