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

#include "gdde/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "gdde/error.hpp"

namespace gdde {

TransformParams select_transform_params(double j, double a, int k) {
  if (!(j > 0.0) || !(a > 0.0) || k < 0) {
    throw DomainError("transform parameters need j > 0, a > 0 and k >= 0");
  }
  TransformParams p;
  p.k = k;
  p.beta = (k + 1.0) / j + 1.0;
  p.alpha = (j + 1.0) / std::pow(a, 1.0 / p.beta);
  return p;
}

double transform_omega(double t, double s, const TransformParams& params) {
  return std::exp(-std::pow(t - s, 1.0 / params.beta) / params.alpha);
}

double transform_delay(double omega, const TransformParams& params) {
  return std::pow(-params.alpha * std::log(omega), params.beta);
}

namespace {

double log_prefactor(const GammaKernel& kernel, const TransformParams& p) {
  const double j = kernel.shape();
  return std::log(p.beta) + p.beta * j * std::log(p.alpha) + j * std::log(kernel.rate()) -
         std::lgamma(j);
}

double weight_from_log(double omega, double log_scale, const GammaKernel& kernel,
                       const TransformParams& p) {
  const double L = -std::log(omega);
  const double w = std::pow(p.alpha * L, p.beta);
  const double log_u =
      log_scale + (p.beta * kernel.shape() - 1.0) * std::log(L) + L - kernel.rate() * w;
  return std::exp(log_u);
}

}  // namespace

double transformed_weight(double omega, const GammaKernel& kernel,
                          const TransformParams& params) {
  return weight_from_log(omega, log_prefactor(kernel, params), kernel, params);
}

double transformed_integrand(double t, double omega,
                             const std::function<double(double)>& solution,
                             const GammaKernel& kernel, const TransformParams& params) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw DomainError("transformed integrand is defined on the open interval (0, 1)");
  }
  const double w = transformed_weight(omega, kernel, params);
  if (w == 0.0) return 0.0;
  return w * solution(t - transform_delay(omega, params));
}

double open_simpson(const std::function<double(double)>& f, int panels, double lo,
                    double hi) {
  if (panels < 1) throw DomainError("open_simpson needs at least one panel");
  const double width = (hi - lo) / panels;
  const double h = width / 4.0;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * width;
    sum += 2.0 * f(a + h) - f(a + 2.0 * h) + 2.0 * f(a + 3.0 * h);
  }
  return sum * 4.0 * h / 3.0;
}

int couple_stepsizes(double h, double xi, int p, int q) {
  if (!(h > 0.0) || !(xi > 0.0) || p < 1 || q < 1) {
    throw DomainError("couple_stepsizes needs h > 0, xi > 0 and positive orders");
  }
  const double h_int = std::pow(xi, 1.0 / q) * std::pow(h, static_cast<double>(p) / q);
  return std::max(1, static_cast<int>(std::ceil(1.0 / (4.0 * h_int) - 1e-9)));
}

ConvolutionRule::ConvolutionRule(GammaKernel kernel, TransformParams params)
    : kernel_(kernel), params_(params), log_scale_(log_prefactor(kernel, params)) {}

void ConvolutionRule::nodes(double t, double t0, int panels, double mesh_step,
                            double jitter, std::vector<ConvolutionNode>& out) const {
  out.clear();
  const double omega0 = t > t0 ? transform_omega(t, t0, params_) : 1.0;

  auto add_piece = [&](double lo, double hi, bool history) {
    if (!(hi > lo)) return;
    const int np = std::max(1, static_cast<int>(std::ceil((hi - lo) * panels - 1e-12)));
    const double width = (hi - lo) / np;
    const double q = width / 4.0;
    const double scale = 4.0 * q / 3.0;
    static constexpr double coef[3] = {2.0, -1.0, 2.0};
    for (int p = 0; p < np; ++p) {
      const double a = lo + p * width;
      for (int m = 0; m < 3; ++m) {
        const double omega = a + (m + 1) * q;
        const double w = weight_from_log(omega, log_scale_, kernel_, params_);
        if (w == 0.0) continue;
        double s = t - transform_delay(omega, params_);
        if (history) {
          s = std::min(s, t0);
        } else {
          s = std::max(s, t0);
          if (mesh_step > 0.0 && jitter > 0.0) {
            const double m_idx = std::round((s - t0) / mesh_step);
            const double mesh = t0 + m_idx * mesh_step;
            if (std::abs(s - mesh) < jitter) s = m_idx == 0.0 ? t0 + jitter : mesh - jitter;
          }
        }
        out.push_back({s, scale * coef[m] * w, history});
      }
    }
  };

  add_piece(0.0, omega0, true);
  add_piece(omega0, 1.0, false);
}

double ConvolutionRule::integrate(double t, double t0, int panels,
                                  const std::function<double(double)>& history,
                                  const std::function<double(double)>& solution,
                                  double mesh_step, double jitter) const {
  std::vector<ConvolutionNode> nodes_buf;
  nodes(t, t0, panels, mesh_step, jitter, nodes_buf);
  double sum = 0.0;
  for (const auto& node : nodes_buf) {
    sum += node.weight * (node.history ? history(node.s) : solution(node.s));
  }
  return sum;
}

}  // namespace gdde
