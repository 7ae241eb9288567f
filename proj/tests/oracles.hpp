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

// Reference solutions built from textbook formulas and Boost.Odeint, kept
// separate from the library code under test.
#ifndef GDDE_TESTS_ORACLES_HPP
#define GDDE_TESTS_ORACLES_HPP

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// x' = 0.8 x - 1.1 I with an exponential kernel of mean 1 and unit history:
/// a two-dimensional linear ODE with eigenvalues -0.1 +- i sqrt(0.29).
inline double linear_j1(double t) {
  const double w = std::sqrt(0.29);
  const double b = (-0.3 + 0.1) / w;
  return std::exp(-0.1 * t) * (std::cos(w * t) + b * std::sin(w * t));
}

/// Integer-shape distributed delay equation as the classical linear chain,
/// integrated with a controlled Dormand-Prince stepper. The history is
/// c exp(rho s) on s <= 0.
inline std::vector<double> erlang_chain(const std::function<double(double, double)>& f, int n,
                                        double tau, double c, double rho,
                                        const std::vector<double>& times, double tol = 1e-12) {
  using state = std::vector<double>;
  namespace ode = boost::numeric::odeint;
  const double a = n / tau;
  state y(n + 1);
  y[0] = c;
  for (int i = 1; i <= n; ++i) y[i] = c * std::pow(a / (a + rho), i);
  auto rhs = [&](const state& x, state& dx, double) {
    dx[0] = f(x[0], x[n]);
    for (int i = 1; i <= n; ++i) dx[i] = a * (x[i - 1] - x[i]);
  };
  std::vector<double> out;
  auto observe = [&](const state& x, double) { out.push_back(x[0]); };
  auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<state>());
  ode::integrate_times(stepper, rhs, y, times.begin(), times.end(), 1e-3, observe);
  return out;
}

/// Real root lambda > -a of (lambda + a)^{j+1} = beta a^j.
inline double gamma_eigen_root(double tau, double j, double beta) {
  const double a = j / tau;
  return std::pow(beta * std::pow(a, j), 1.0 / (j + 1.0)) - a;
}

/// int_0^inf f(s) ds by exp-sinh quadrature.
inline double half_line(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> q;
  return q.integrate(f, 1e-13);
}

/// Gamma density with shape j and rate a, computed directly.
inline double gamma_density(double j, double a, double s) {
  if (s <= 0.0) return 0.0;
  return std::exp(j * std::log(a) + (j - 1.0) * std::log(s) - a * s - std::lgamma(j));
}

}  // namespace oracle

#endif  // GDDE_TESTS_ORACLES_HPP
