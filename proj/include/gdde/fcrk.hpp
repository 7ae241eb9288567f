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

#ifndef GDDE_FCRK_HPP
#define GDDE_FCRK_HPP

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "gdde/distributions.hpp"
#include "gdde/history.hpp"
#include "gdde/ode_solver.hpp"
#include "gdde/quadrature.hpp"

namespace gdde {

/// Cubic polynomial in theta, coefficients of theta^0..theta^3.
using ThetaPoly = std::array<double, 4>;

inline double eval_poly(const ThetaPoly& p, double theta) {
  return ((p[3] * theta + p[2]) * theta + p[1]) * theta + p[0];
}

/// Explicit functionally continuous Runge-Kutta tableau (A(theta), b(theta), c).
struct FcrkTableau {
  int stages = 0;
  std::vector<double> c;
  /// a[i][j] for j < i (lower triangular, row i has i entries).
  std::vector<std::vector<ThetaPoly>> a;
  std::vector<ThetaPoly> b;

  /// Six-stage fourth-order scheme.
  static FcrkTableau fcrk4();
};

/// x' = F(x, I) with I = int_0^inf x(t - s) g(s) ds taken componentwise.
using DelayRhs = std::function<void(std::span<const double> x,
                                    std::span<const double> conv, std::span<double> out)>;

struct DdeProblem {
  DelayRhs rhs;
  GammaKernel kernel{1.0, 1.0};
  /// One history per state component.
  std::vector<HistoryFunction> history;
  double t0 = 0.0;
  double t_end = 1.0;

  std::size_t dimension() const noexcept { return history.size(); }

  /// Scalar problem x' = f(x, I).
  static DdeProblem scalar(std::function<double(double, double)> f, GammaKernel kernel,
                           HistoryFunction history, double t0, double t_end);
};

/// Piecewise-polynomial FCRK solution on the mesh t0 + n h.
class Solution {
 public:
  Solution(std::vector<HistoryFunction> history, FcrkTableau tableau, double t0,
           std::size_t dimension);

  std::size_t dimension() const noexcept { return dim_; }
  double t0() const noexcept { return t0_; }
  double t_end() const noexcept { return mesh_.back(); }
  std::size_t steps() const noexcept { return mesh_.size() - 1; }
  const std::vector<double>& mesh() const noexcept { return mesh_; }
  /// Mesh value x^n, component i.
  double mesh_value(std::size_t n, std::size_t i = 0) const { return x_[n * dim_ + i]; }

  /// History for t <= t0, step interpolant otherwise. Throws DomainError for
  /// t beyond the last mesh point.
  State query(double t) const;
  double query(double t, std::size_t component) const;

  /// Interpolant of completed step n at theta in [0, 1].
  double step_value(std::size_t n, double theta, std::size_t component) const;

  // Construction interface used by the solver.
  void push_initial(std::span<const double> x0);
  void push_step(double h, std::span<const double> stage_derivs);
  const FcrkTableau& tableau() const noexcept { return tableau_; }
  const std::vector<HistoryFunction>& history() const noexcept { return history_; }

 private:
  std::size_t locate(double t) const;

  std::vector<HistoryFunction> history_;
  FcrkTableau tableau_;
  double t0_;
  std::size_t dim_;
  std::vector<double> mesh_;
  std::vector<double> x_;
  /// K[n][stage][component], flattened.
  std::vector<double> k_;
};

/// Solves the problem with fixed step h (the final step is shortened to land
/// on t_end). Throws SolverError on a non-finite stage value.
Solution fcrk4_solve(const DdeProblem& problem, double h, const QuadConfig& quad = {});

}  // namespace gdde

#endif  // GDDE_FCRK_HPP
