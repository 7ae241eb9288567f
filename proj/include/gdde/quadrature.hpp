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

#ifndef GDDE_QUADRATURE_HPP
#define GDDE_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "gdde/distributions.hpp"

namespace gdde {

/// Parameters of the map omega = exp(-(t - s)^{1/beta} / alpha), which sends
/// the infinite delay axis onto (0, 1).
struct TransformParams {
  double alpha = 1.0;
  double beta = 2.0;
  int k = 4;
};

struct QuadConfig {
  /// Coupling constant in h_int^q = xi h^p.
  double xi = 1e-8;
  /// Composite open-Simpson panels on [0, 1]. Zero derives the count from the
  /// solver step via couple_stepsizes.
  int panels = 0;
  /// Relative node jitter; the absolute shift is node_jitter times the step.
  double node_jitter = 1e-9;
  /// Smoothness order used to pick the transform parameters.
  int k = 4;
};

/// beta = (k + 1)/j + 1 and alpha = (j + 1)/a^{1/beta}.
TransformParams select_transform_params(double j, double a, int k = 4);

/// omega(t, s) for s < t.
double transform_omega(double t, double s, const TransformParams& params);
/// Inverse map s(t, omega) = t - (-alpha log omega)^beta.
double transform_delay(double omega, const TransformParams& params);

/// Kernel part of the transformed integrand: u(t, omega) = weight * X(s).
/// Evaluated in log space; zero where it underflows.
double transformed_weight(double omega, const GammaKernel& kernel,
                          const TransformParams& params);

/// u(t, omega) for a solution accessor defined on (-inf, t]. Throws DomainError
/// unless 0 < omega < 1.
double transformed_integrand(double t, double omega,
                             const std::function<double(double)>& solution,
                             const GammaKernel& kernel, const TransformParams& params);

/// Composite open rule on [lo, hi]: each panel uses
/// (4h/3)(2 f(a + h) - f(a + 2h) + 2 f(a + 3h)) with h = width / 4.
double open_simpson(const std::function<double(double)>& f, int panels, double lo = 0.0,
                    double hi = 1.0);

/// Panel count for FCRK step h: h_int = xi^{1/q} h^{p/q}, panels = ceil(1/(4 h_int)).
int couple_stepsizes(double h, double xi = 1.0, int p = 4, int q = 4);

/// A quadrature node of the convolution at a fixed time t.
struct ConvolutionNode {
  /// Argument of the solution, possibly jittered off a mesh point.
  double s;
  /// Open-Simpson weight times the kernel part of u.
  double weight;
  /// True when s <= t0 and the history must be read.
  bool history;
};

/// Nodes and weights approximating int_0^inf X(t - s) g(s) ds. The omega axis
/// is split at omega(t, t0) so history and solution never share a panel; each
/// piece receives max(1, ceil(width * panels)) panels. Nodes of the solution
/// piece lying within the jitter distance of the mesh t0 + m*mesh_step are
/// moved inside the piece (to t0 + jitter next to t0, otherwise s - jitter).
class ConvolutionRule {
 public:
  ConvolutionRule(GammaKernel kernel, TransformParams params);

  const GammaKernel& kernel() const noexcept { return kernel_; }
  const TransformParams& params() const noexcept { return params_; }

  void nodes(double t, double t0, int panels, double mesh_step, double jitter,
             std::vector<ConvolutionNode>& out) const;

  /// Convenience scalar evaluation with separate history and solution readers.
  double integrate(double t, double t0, int panels,
                   const std::function<double(double)>& history,
                   const std::function<double(double)>& solution, double mesh_step = 0.0,
                   double jitter = 0.0) const;

 private:
  GammaKernel kernel_;
  TransformParams params_;
  double log_scale_;
};

}  // namespace gdde

#endif  // GDDE_QUADRATURE_HPP
