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

#include "gdde/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gdde/error.hpp"

namespace gdde {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw DomainError("nelder_mead needs at least one parameter");
  std::vector<double> step = options.initial_step;
  if (step.empty()) {
    step.resize(n);
    for (std::size_t i = 0; i < n; ++i) step[i] = x0[i] != 0.0 ? 0.1 * std::abs(x0[i]) : 0.1;
  }
  if (step.size() != n) throw DomainError("initial_step must match the parameter count");

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.n_evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<double> best = std::move(x0);
  double best_f = eval(best);

  for (int round = 0; round <= options.restarts; ++round) {
    Simplex s;
    s.x.push_back(best);
    s.f.push_back(best_f);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> v = best;
      v[i] += step[i];
      s.f.push_back(eval(v));
      s.x.push_back(std::move(v));
    }

    bool converged = false;
    std::vector<std::size_t> order(n + 1);
    while (res.n_evals < options.max_evals) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
      const std::size_t lo = order.front(), hi = order.back(), second = order[n - 1];
      res.trace.push_back(s.f[lo]);

      double diameter = 0.0;
      for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          diameter = std::max(diameter, std::abs(s.x[k][i] - s.x[lo][i]));
        }
      }
      if (std::abs(s.f[hi] - s.f[lo]) <= options.f_tol * (1.0 + std::abs(s.f[lo])) &&
          diameter <= options.x_tol) {
        converged = true;
        break;
      }

      std::vector<double> centroid(n, 0.0);
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == hi) continue;
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s.x[k][i] / static_cast<double>(n);
      }
      auto along = [&](double coef) {
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = centroid[i] + coef * (s.x[hi][i] - centroid[i]);
        return v;
      };

      std::vector<double> xr = along(-1.0);
      const double fr = eval(xr);
      if (fr < s.f[lo]) {
        std::vector<double> xe = along(-2.0);
        const double fe = eval(xe);
        if (fe < fr) {
          s.x[hi] = std::move(xe);
          s.f[hi] = fe;
        } else {
          s.x[hi] = std::move(xr);
          s.f[hi] = fr;
        }
        continue;
      }
      if (fr < s.f[second]) {
        s.x[hi] = std::move(xr);
        s.f[hi] = fr;
        continue;
      }
      const bool outside = fr < s.f[hi];
      std::vector<double> xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : s.f[hi])) {
        s.x[hi] = std::move(xc);
        s.f[hi] = fc;
        continue;
      }
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == lo) continue;
        for (std::size_t i = 0; i < n; ++i) s.x[k][i] = s.x[lo][i] + 0.5 * (s.x[k][i] - s.x[lo][i]);
        s.f[k] = eval(s.x[k]);
      }
    }

    const auto it = std::min_element(s.f.begin(), s.f.end());
    const std::size_t lo = static_cast<std::size_t>(it - s.f.begin());
    const bool improved = s.f[lo] < best_f - options.f_tol * (1.0 + std::abs(best_f));
    best = s.x[lo];
    best_f = s.f[lo];
    res.converged = converged;
    if (!converged || (round > 0 && !improved)) break;
  }

  res.x = std::move(best);
  res.value = best_f;
  return res;
}

}  // namespace gdde
