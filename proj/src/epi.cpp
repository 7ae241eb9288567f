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

#include "gdde/epi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "gdde/distributions.hpp"
#include "gdde/error.hpp"
#include "gdde/nelder_mead.hpp"
#include "gdde/special_functions.hpp"

namespace gdde {

std::vector<double> default_obs_times(int count, double dt) {
  if (count < 0 || !(dt > 0.0)) throw DomainError("observation grid needs count >= 0, dt > 0");
  std::vector<double> t;
  t.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k) t.push_back(k * dt);
  return t;
}

namespace {

void validate(const SirParams& p) {
  if (!(p.beta > 0.0) || !(p.tau > 0.0) || !(p.j > 0.0)) {
    throw DomainError("SIR parameters need beta, tau, j > 0");
  }
  if (!(p.eps >= 0.0 && p.eps < 1.0)) throw DomainError("eps must lie in [0, 1)");
  if (!(p.population >= 1.0)) throw DomainError("population scale must be at least 1");
  for (std::size_t k = 0; k < p.obs_times.size(); ++k) {
    const double prev = k == 0 ? 0.0 : p.obs_times[k - 1];
    if (!(p.obs_times[k] > prev)) throw DomainError("observation times must increase from 0");
  }
}

}  // namespace

SirChain build_sir_chain(const SirParams& params) {
  validate(params);
  SirChain c;
  c.chain = make_chain(params.variant, params.j, params.tau, params.approx);
  c.rates = c.chain.rates();
  c.stiff = stiffness_check(c.chain, params.approx);

  const std::size_t n = c.rates.size();
  auto rates = std::make_shared<const std::vector<double>>(c.rates);
  const double beta = params.beta;
  c.system.rhs = [rates, beta, n](double, std::span<const double> y, std::span<double> dydt) {
    const auto& r = *rates;
    double infected = 0.0;
    for (std::size_t i = 1; i <= n; ++i) infected += y[i];
    const double force = beta * y[0] * infected;
    dydt[0] = -force;
    dydt[1] = force - r[0] * y[1];
    for (std::size_t i = 2; i <= n; ++i) dydt[i] = r[i - 2] * y[i - 1] - r[i - 1] * y[i];
    dydt[n + 1] = r[n - 1] * y[n];
  };
  c.system.initial.assign(n + 2, 0.0);
  c.system.initial[0] = 1.0 - params.eps;
  c.system.initial[1] = params.eps;
  c.system.t0 = 0.0;
  return c;
}

Trajectory simulate_sir(const SirParams& params, const std::vector<double>& times, double tol) {
  const SirChain c = build_sir_chain(params);
  AdaptiveStep step;
  step.rtol = tol;
  step.atol = tol;
  return rk45_adaptive(c.system.rhs, c.system.initial, 0.0, times, step);
}

std::vector<double> simulate_incidence(const SirParams& params, double tol) {
  if (params.obs_times.empty()) return {};
  std::vector<double> times;
  times.reserve(params.obs_times.size() + 1);
  times.push_back(0.0);
  times.insert(times.end(), params.obs_times.begin(), params.obs_times.end());
  const Trajectory tr = simulate_sir(params, times, tol);
  std::vector<double> inc;
  inc.reserve(params.obs_times.size());
  for (std::size_t k = 1; k < tr.states.size(); ++k) {
    const double d = tr.states[k - 1][0] - tr.states[k][0];
    inc.push_back(params.population * std::max(0.0, d));
  }
  return inc;
}

double serial_density(double j, double tau, double t) {
  if (!(j > 0.0) || !(tau > 0.0)) throw DomainError("serial density needs j, tau > 0");
  if (t < 0.0) throw DomainError("serial density is defined for t >= 0");
  return regularized_gamma_q(j, j * t / tau) / tau;
}

double log_serial_density(double j, double tau, double t) {
  const double h = serial_density(j, tau, t);
  return h > 0.0 ? std::log(h) : -std::numeric_limits<double>::infinity();
}

double sample_serial(Rng& rng, double j, double tau) {
  return sample_equilibrium_gamma(rng, GammaKernel::from_mean(j, tau));
}

double poisson_log_pmf(long x, double mu) {
  if (x < 0) return -std::numeric_limits<double>::infinity();
  if (mu == 0.0) return x == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const double xd = static_cast<double>(x);
  return -mu + xd * std::log(mu) - std::lgamma(xd + 1.0);
}

long sample_poisson(Rng& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    const double u = rng.uniform();
    long k = 0;
    double p = std::exp(-mean);
    double cdf = p;
    while (u > cdf && p > 0.0) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // Transformed rejection with decomposition (Hormann 1993).
  const double smu = std::sqrt(mean);
  const double log_mu = std::log(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    v *= inv_alpha / (a / (us * us) + b);
    if (std::log(v) <= -mean + k * log_mu - std::lgamma(k + 1.0)) return static_cast<long>(k);
  }
}

EpiData synthesize_data(const SirParams& params, int serial_count, Rng& rng) {
  if (serial_count < 0) throw DomainError("serial_count must be non-negative");
  EpiData d;
  d.times = params.obs_times;
  for (double mu : simulate_incidence(params)) d.cases.push_back(sample_poisson(rng, mu));
  for (int l = 0; l < serial_count; ++l) d.serial.push_back(sample_serial(rng, params.j, params.tau));
  return d;
}

double log_likelihood(const SirParams& params, const EpiData& data) {
  if (data.cases.size() != data.times.size()) {
    throw DomainError("case counts and observation times differ in length");
  }
  double ll = 0.0;
  if (!data.cases.empty()) {
    SirParams p = params;
    p.obs_times = data.times;
    const std::vector<double> mu = simulate_incidence(p);
    for (std::size_t k = 0; k < mu.size(); ++k) ll += poisson_log_pmf(data.cases[k], mu[k]);
  }
  for (double t : data.serial) ll += log_serial_density(params.j, params.tau, t);
  return ll;
}

FitResult mle_fit(const EpiData& data, const SirParams& init, const FitBounds& bounds,
                  const FitOptions& options) {
  if (!(bounds.j_min > 1.0) || bounds.j_max <= bounds.j_min) {
    throw DomainError("fit bounds need 1 < j_min < j_max");
  }
  auto clamp = [](double v, double lo, double hi) { return std::min(std::max(v, lo), hi); };
  auto to_params = [&](std::span<const double> x) {
    SirParams p = init;
    p.variant = options.variant;
    p.beta = clamp(std::exp(x[0]), bounds.beta_min, bounds.beta_max);
    p.tau = clamp(std::exp(x[1]), bounds.tau_min, bounds.tau_max);
    p.j = clamp(x[2], bounds.j_min, bounds.j_max);
    p.eps = clamp(std::exp(x[3]), bounds.eps_min, bounds.eps_max);
    return p;
  };
  auto objective = [&](std::span<const double> x) {
    try {
      const double ll = log_likelihood(to_params(x), data);
      return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
    } catch (const SolverError&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  std::vector<double> x0 = {std::log(clamp(init.beta, bounds.beta_min, bounds.beta_max)),
                            std::log(clamp(init.tau, bounds.tau_min, bounds.tau_max)),
                            clamp(init.j, bounds.j_min, bounds.j_max),
                            std::log(clamp(init.eps, bounds.eps_min, bounds.eps_max))};
  NelderMeadOptions nm;
  nm.initial_step = {0.2, 0.2, 0.5, 0.5};
  nm.max_evals = options.max_evals;
  nm.restarts = options.restarts;
  nm.f_tol = 1e-10;
  nm.x_tol = 1e-6;
  const NelderMeadResult r = nelder_mead(objective, x0, nm);
  if (!std::isfinite(r.value)) throw SolverError("likelihood is not finite anywhere visited");

  FitResult out;
  out.params = to_params(r.x);
  out.loglik = -r.value;
  out.n_evals = r.n_evals;
  out.converged = r.converged;
  out.trace.reserve(r.trace.size());
  for (double v : r.trace) out.trace.push_back(-v);
  return out;
}

}  // namespace gdde
