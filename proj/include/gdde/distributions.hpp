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

#ifndef GDDE_DISTRIBUTIONS_HPP
#define GDDE_DISTRIBUTIONS_HPP

#include <span>
#include <vector>

#include "gdde/rng.hpp"

namespace gdde {

/// Gamma probability kernel g_a^j(s) = a^j s^{j-1} e^{-a s} / Gamma(j).
class GammaKernel {
 public:
  /// Throws DomainError unless shape > 0 and rate > 0.
  GammaKernel(double shape, double rate);

  /// Kernel with the given shape and mean tau (rate = shape / tau).
  static GammaKernel from_mean(double shape, double mean);

  double shape() const noexcept { return shape_; }
  double rate() const noexcept { return rate_; }
  double mean() const noexcept { return shape_ / rate_; }
  double variance() const noexcept { return shape_ / (rate_ * rate_); }

 private:
  double shape_;
  double rate_;
};

/// Distribution of a sum of independent exponential stages, traversed in
/// order. Rates may repeat.
class HypoexpKernel {
 public:
  /// Throws DomainError if rates is empty or any rate is not positive/finite.
  explicit HypoexpKernel(std::vector<double> rates);

  std::span<const double> rates() const noexcept { return rates_; }
  std::size_t stages() const noexcept { return rates_.size(); }
  double min_rate() const noexcept;

 private:
  std::vector<double> rates_;
};

struct Moments {
  double mean;
  double variance;
};

double gamma_pdf(const GammaKernel& kernel, double s);
double gamma_survival(const GammaKernel& kernel, double t);
double gamma_cdf(const GammaKernel& kernel, double t);
/// E[e^{theta X}] = (1 - theta/a)^{-j}; requires theta < a.
double gamma_mgf(const GammaKernel& kernel, double theta);

/// prod_i rate_i / (rate_i - theta); requires theta < min rate.
double hypoexp_mgf(const HypoexpKernel& kernel, double theta);
Moments hypoexp_moments(const HypoexpKernel& kernel);

/// Occupation probabilities of each transient stage at time t, starting with
/// all mass in stage 1. Obtained by exact integration of the bidiagonal
/// generator ODE p' = Q p (matrix exponential with scaling and squaring), which
/// stays accurate for coincident rates and for very stiff stages.
std::vector<double> hypoexp_stage_probabilities(const HypoexpKernel& kernel,
                                                double t);
/// Mass not yet absorbed at time t.
double hypoexp_survival(const HypoexpKernel& kernel, double t);
/// Absorption density: last rate times the occupation of the last stage.
double hypoexp_pdf(const HypoexpKernel& kernel, double t);

double sample_gamma(Rng& rng, const GammaKernel& kernel);

/// Draw from the equilibrium (residual lifetime) density survival(t) / mean.
/// Uses the size-biased construction U * G with G ~ Gamma(j + 1, a).
double sample_equilibrium_gamma(Rng& rng, const GammaKernel& kernel);

}  // namespace gdde

#endif  // GDDE_DISTRIBUTIONS_HPP
