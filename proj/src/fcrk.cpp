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

#include "gdde/fcrk.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gdde/error.hpp"

namespace gdde {

FcrkTableau FcrkTableau::fcrk4() {
  const ThetaPoly euler{0.0, 1.0, 0.0, 0.0};
  const ThetaPoly heun1{0.0, 1.0, -0.5, 0.0};
  const ThetaPoly heun2{0.0, 0.0, 0.5, 0.0};
  const ThetaPoly simpson1{0.0, 1.0, -1.5, 2.0 / 3.0};
  const ThetaPoly simpson_mid{0.0, 0.0, 2.0, -4.0 / 3.0};
  const ThetaPoly simpson_end{0.0, 0.0, -0.5, 2.0 / 3.0};
  const ThetaPoly zero{0.0, 0.0, 0.0, 0.0};

  FcrkTableau t;
  t.stages = 6;
  t.c = {0.0, 1.0, 0.5, 1.0, 0.5, 1.0};
  t.a = {
      {},
      {euler},
      {heun1, heun2},
      {heun1, heun2, zero},
      {simpson1, zero, simpson_mid, simpson_end},
      {simpson1, zero, simpson_mid, simpson_end, zero},
  };
  t.b = {simpson1, zero, zero, zero, simpson_mid, simpson_end};
  return t;
}

DdeProblem DdeProblem::scalar(std::function<double(double, double)> f, GammaKernel kernel,
                              HistoryFunction history, double t0, double t_end) {
  DdeProblem p;
  p.rhs = [f = std::move(f)](std::span<const double> x, std::span<const double> conv,
                             std::span<double> out) { out[0] = f(x[0], conv[0]); };
  p.kernel = kernel;
  p.history = {std::move(history)};
  p.t0 = t0;
  p.t_end = t_end;
  return p;
}

Solution::Solution(std::vector<HistoryFunction> history, FcrkTableau tableau, double t0,
                   std::size_t dimension)
    : history_(std::move(history)), tableau_(std::move(tableau)), t0_(t0), dim_(dimension) {}

void Solution::push_initial(std::span<const double> x0) {
  mesh_.assign(1, t0_);
  x_.assign(x0.begin(), x0.end());
  k_.clear();
}

void Solution::push_step(double h, std::span<const double> stage_derivs) {
  const std::size_t n = steps();
  const std::size_t s = static_cast<std::size_t>(tableau_.stages);
  k_.insert(k_.end(), stage_derivs.begin(), stage_derivs.end());
  mesh_.push_back(mesh_.back() + h);
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (std::size_t st = 0; st < s; ++st) {
      acc += eval_poly(tableau_.b[st], 1.0) * k_[(n * s + st) * dim_ + i];
    }
    x_.push_back(x_[n * dim_ + i] + h * acc);
  }
}

std::size_t Solution::locate(double t) const {
  auto it = std::upper_bound(mesh_.begin(), mesh_.end(), t);
  std::size_t n = static_cast<std::size_t>(it - mesh_.begin());
  n = n == 0 ? 0 : n - 1;
  return std::min(n, steps() - 1);
}

double Solution::step_value(std::size_t n, double theta, std::size_t component) const {
  const std::size_t s = static_cast<std::size_t>(tableau_.stages);
  const double h = mesh_[n + 1] - mesh_[n];
  double acc = 0.0;
  for (std::size_t st = 0; st < s; ++st) {
    acc += eval_poly(tableau_.b[st], theta) * k_[(n * s + st) * dim_ + component];
  }
  return x_[n * dim_ + component] + h * acc;
}

double Solution::query(double t, std::size_t component) const {
  if (t < t0_) return history_[component](t);
  if (t == t0_ || steps() == 0) return x_[component];
  const double tol = 1e-12 * std::max(1.0, std::abs(t_end()));
  if (t > t_end() + tol) throw DomainError("solution queried beyond its final time");
  const std::size_t n = locate(std::min(t, t_end()));
  const double theta = (std::min(t, t_end()) - mesh_[n]) / (mesh_[n + 1] - mesh_[n]);
  return step_value(n, theta, component);
}

State Solution::query(double t) const {
  State out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = query(t, i);
  return out;
}

Solution fcrk4_solve(const DdeProblem& problem, double h, const QuadConfig& quad) {
  const std::size_t d = problem.dimension();
  if (d == 0) throw DomainError("DDE problem needs a history per state component");
  if (!problem.rhs) throw DomainError("DDE problem needs a right-hand side");
  if (!(h > 0.0) || !(problem.t_end > problem.t0)) {
    throw DomainError("fcrk4_solve needs h > 0 and t_end > t0");
  }

  const FcrkTableau tab = FcrkTableau::fcrk4();
  const std::size_t s = static_cast<std::size_t>(tab.stages);
  const GammaKernel& kernel = problem.kernel;
  const ConvolutionRule rule(kernel,
                             select_transform_params(kernel.shape(), kernel.rate(), quad.k));
  const int panels = quad.panels > 0 ? quad.panels : couple_stepsizes(h, quad.xi);
  const double jitter = quad.node_jitter * h;

  std::vector<double> point_mass(d, 0.0);
  bool has_point_mass = false;
  State x0(d);
  for (std::size_t i = 0; i < d; ++i) {
    x0[i] = problem.history[i].initial_value(problem.t0);
    if (problem.history[i].kind() == HistoryFunction::Kind::point_mass) {
      point_mass[i] = problem.history[i].mass();
      has_point_mass = has_point_mass || point_mass[i] != 0.0;
    }
  }

  Solution sol(problem.history, tab, problem.t0, d);
  sol.push_initial(x0);

  const double span = problem.t_end - problem.t0;
  const long n_steps = std::max(1L, static_cast<long>(std::ceil(span / h - 1e-9)));

  std::vector<double> k(s * d);
  std::vector<ConvolutionNode> nodes;
  State x(d), y(d), conv(d), xs(d);

  for (long n = 0; n < n_steps; ++n) {
    const double tn = problem.t0 + static_cast<double>(n) * h;
    const double hn = n + 1 == n_steps ? problem.t_end - tn : h;
    for (std::size_t i = 0; i < d; ++i) x[i] = sol.mesh_value(static_cast<std::size_t>(n), i);

    for (std::size_t st = 0; st < s; ++st) {
      auto stage_value = [&](double theta, std::span<double> out) {
        for (std::size_t i = 0; i < d; ++i) {
          double acc = 0.0;
          for (std::size_t q = 0; q < st; ++q) {
            acc += eval_poly(tab.a[st][q], theta) * k[q * d + i];
          }
          out[i] = x[i] + hn * acc;
        }
      };

      const double ti = tn + tab.c[st] * hn;
      rule.nodes(ti, problem.t0, panels, h, jitter, nodes);
      std::fill(conv.begin(), conv.end(), 0.0);
      for (const auto& node : nodes) {
        if (node.history) {
          for (std::size_t i = 0; i < d; ++i) conv[i] += node.weight * problem.history[i](node.s);
        } else if (n > 0 && node.s <= tn) {
          for (std::size_t i = 0; i < d; ++i) conv[i] += node.weight * sol.query(node.s, i);
        } else {
          stage_value((node.s - tn) / hn, xs);
          for (std::size_t i = 0; i < d; ++i) conv[i] += node.weight * xs[i];
        }
      }
      if (has_point_mass && ti > problem.t0) {
        const double g = gamma_pdf(kernel, ti - problem.t0);
        for (std::size_t i = 0; i < d; ++i) conv[i] += point_mass[i] * g;
      }

      stage_value(tab.c[st], y);
      problem.rhs(y, conv, std::span<double>(k.data() + st * d, d));
      for (std::size_t i = 0; i < d; ++i) {
        if (!std::isfinite(k[st * d + i])) {
          throw SolverError("non-finite stage value at step " + std::to_string(n), n);
        }
      }
    }
    sol.push_step(hn, k);
  }
  return sol;
}

}  // namespace gdde
