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

#include "gdde/distributions.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "gdde/error.hpp"
#include "gdde/special_functions.hpp"

namespace gdde {

GammaKernel::GammaKernel(double shape, double rate) : shape_(shape), rate_(rate) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw DomainError("gamma kernel: shape must be positive");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw DomainError("gamma kernel: rate must be positive");
  }
}

GammaKernel GammaKernel::from_mean(double shape, double mean) {
  if (!(mean > 0.0)) throw DomainError("gamma kernel: mean must be positive");
  return GammaKernel(shape, shape / mean);
}

HypoexpKernel::HypoexpKernel(std::vector<double> rates) : rates_(std::move(rates)) {
  if (rates_.empty()) throw DomainError("hypoexponential kernel: no stages");
  for (double r : rates_) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      throw DomainError("hypoexponential kernel: rates must be positive and finite");
    }
  }
}

double HypoexpKernel::min_rate() const noexcept {
  return *std::min_element(rates_.begin(), rates_.end());
}

double gamma_pdf(const GammaKernel& kernel, double s) {
  if (s < 0.0) throw DomainError("gamma_pdf: s must be non-negative");
  const double j = kernel.shape();
  const double a = kernel.rate();
  if (s == 0.0) {
    if (j == 1.0) return a;
    if (j > 1.0) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  return std::exp(j * std::log(a) + (j - 1.0) * std::log(s) - a * s - std::lgamma(j));
}

double gamma_survival(const GammaKernel& kernel, double t) {
  if (t < 0.0) throw DomainError("gamma_survival: t must be non-negative");
  return regularized_gamma_q(kernel.shape(), kernel.rate() * t);
}

double gamma_cdf(const GammaKernel& kernel, double t) {
  if (t < 0.0) throw DomainError("gamma_cdf: t must be non-negative");
  return regularized_gamma_p(kernel.shape(), kernel.rate() * t);
}

double gamma_mgf(const GammaKernel& kernel, double theta) {
  if (!(theta < kernel.rate())) {
    throw DomainError("gamma_mgf: theta must be below the rate");
  }
  return std::pow(1.0 - theta / kernel.rate(), -kernel.shape());
}

double hypoexp_mgf(const HypoexpKernel& kernel, double theta) {
  if (!(theta < kernel.min_rate())) {
    throw DomainError("hypoexp_mgf: theta must be below the smallest rate");
  }
  double m = 1.0;
  for (double r : kernel.rates()) m *= r / (r - theta);
  return m;
}

Moments hypoexp_moments(const HypoexpKernel& kernel) {
  Moments out{0.0, 0.0};
  for (double r : kernel.rates()) {
    out.mean += 1.0 / r;
    out.variance += 1.0 / (r * r);
  }
  return out;
}

std::vector<double> hypoexp_stage_probabilities(const HypoexpKernel& kernel,
                                                double t) {
  if (t < 0.0) throw DomainError("hypoexp survival: t must be non-negative");
  const auto rates = kernel.rates();
  const auto n = static_cast<Eigen::Index>(rates.size());
  std::vector<double> p(rates.size(), 0.0);
  if (t == 0.0) {
    p[0] = 1.0;
    return p;
  }
  Eigen::MatrixXd generator = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    generator(i, i) = -rates[i] * t;
    if (i + 1 < n) generator(i + 1, i) = rates[i] * t;
  }
  const Eigen::MatrixXd propagator = generator.exp();
  for (Eigen::Index i = 0; i < n; ++i) {
    // Round-off in the squaring phase can leave tiny negative entries.
    p[i] = std::max(0.0, propagator(i, 0));
  }
  return p;
}

double hypoexp_survival(const HypoexpKernel& kernel, double t) {
  const auto p = hypoexp_stage_probabilities(kernel, t);
  double s = 0.0;
  for (double v : p) s += v;
  return std::clamp(s, 0.0, 1.0);
}

double hypoexp_pdf(const HypoexpKernel& kernel, double t) {
  const auto p = hypoexp_stage_probabilities(kernel, t);
  return kernel.rates().back() * p.back();
}

namespace {

// Marsaglia & Tsang (2000) for shape >= 1; unit rate.
double standard_gamma(Rng& rng, double shape) {
  if (shape < 1.0) {
    const double g = standard_gamma(rng, shape + 1.0);
    return g * std::pow(rng.uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
      return d * v;
    }
  }
}

}  // namespace

double sample_gamma(Rng& rng, const GammaKernel& kernel) {
  return standard_gamma(rng, kernel.shape()) / kernel.rate();
}

double sample_equilibrium_gamma(Rng& rng, const GammaKernel& kernel) {
  const double g = standard_gamma(rng, kernel.shape() + 1.0) / kernel.rate();
  return rng.uniform() * g;
}

}  // namespace gdde
