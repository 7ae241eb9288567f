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

#ifndef GDDE_NELDER_MEAD_HPP
#define GDDE_NELDER_MEAD_HPP

#include <functional>
#include <span>
#include <vector>

namespace gdde {

struct NelderMeadOptions {
  /// Initial simplex edge along each coordinate.
  std::vector<double> initial_step;
  int max_evals = 4000;
  /// Stop when the spread of simplex values and the simplex diameter both
  /// fall below these.
  double f_tol = 1e-9;
  double x_tol = 1e-8;
  /// Number of restarts from the best vertex after convergence.
  int restarts = 2;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int n_evals = 0;
  bool converged = false;
  /// Best value after each iteration.
  std::vector<double> trace;
};

/// Minimizes f with the standard reflection/expansion/contraction/shrink
/// simplex moves (coefficients 1, 2, 1/2, 1/2).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options);

}  // namespace gdde

#endif  // GDDE_NELDER_MEAD_HPP
