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

#include "gdde/approximations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gdde/error.hpp"

namespace gdde {
namespace {

void check_inputs(double j, double tau) {
  if (!(j > 0.0) || !std::isfinite(j)) throw DomainError("shape j must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("mean tau must be positive");
}

bool is_integer(double j) { return j == std::floor(j); }

ChainParams exact_erlang(double j, double tau, ChainVariant variant) {
  ChainParams p;
  p.stages = static_cast<int>(j);
  p.common_rate = p.nu = p.mu = j / tau;
  p.variant = variant;
  p.shape = j;
  p.mean = tau;
  return p;
}

// Reciprocal tail rates from the pair (sum, spread): 1/nu = sum + spread,
// 1/mu = sum - spread for the fixed variant.
void set_tail(ChainParams& p, double inv_nu, double inv_mu) {
  if (!(inv_nu > 0.0) || !(inv_mu > 0.0)) {
    throw DomainError("approximation has a non-positive residence time for j = " +
                      std::to_string(p.shape));
  }
  p.nu = 1.0 / inv_nu;
  p.mu = 1.0 / inv_mu;
}

}  // namespace

std::string_view to_string(ChainVariant variant) {
  switch (variant) {
    case ChainVariant::erlang: return "erlang";
    case ChainVariant::fixed: return "fixed";
    case ChainVariant::smoothed: return "smoothed";
    case ChainVariant::smoothed_regularized: return "smoothed_regularized";
  }
  return "unknown";
}

ChainVariant parse_chain_variant(std::string_view name) {
  if (name == "erlang") return ChainVariant::erlang;
  if (name == "fixed") return ChainVariant::fixed;
  if (name == "smoothed") return ChainVariant::smoothed;
  if (name == "smoothed_regularized" || name == "regularized") {
    return ChainVariant::smoothed_regularized;
  }
  throw DomainError("unknown chain variant '" + std::string(name) + "'");
}

std::vector<double> ChainParams::rates() const {
  if (stages == 1) return {mu};
  std::vector<double> r(static_cast<std::size_t>(stages - 2), common_rate);
  r.push_back(nu);
  r.push_back(mu);
  return r;
}

double ChainParams::max_rate() const {
  const auto r = rates();
  return *std::max_element(r.begin(), r.end());
}

int nearest_shape(double j) {
  return std::max(1, static_cast<int>(std::lround(j)));
}

double fractional_part(double j) { return j - std::floor(j); }

ChainParams erlang_approx(double j, double tau) {
  check_inputs(j, tau);
  ChainParams p;
  p.stages = nearest_shape(j);
  p.common_rate = p.nu = p.mu = p.stages / tau;
  p.variant = ChainVariant::erlang;
  p.shape = j;
  p.mean = tau;
  return p;
}

ChainParams fixed_hypoexp(double j, double tau) {
  check_inputs(j, tau);
  if (is_integer(j)) return exact_erlang(j, tau, ChainVariant::fixed);
  ChainParams p;
  p.stages = std::max(static_cast<int>(std::ceil(j)), 2);
  p.variant = ChainVariant::fixed;
  p.shape = j;
  p.mean = tau;
  const double n = p.stages;
  p.common_rate = n / tau;
  // Spread from x^2 - (2 tau/n) x + (tau/n)^2 (1 - n(n/j - 1)/2) = 0. For
  // j > 1, n(n/j - 1)/2 = n (1 - {j}) / (2 j).
  const double spread = std::sqrt(0.5 * n * (n / j - 1.0));
  set_tail(p, (tau / n) * (1.0 + spread), (tau / n) * (1.0 - spread));
  return p;
}

ChainParams smoothed_hypoexp(double j, double tau) {
  check_inputs(j, tau);
  if (is_integer(j)) return exact_erlang(j, tau, ChainVariant::smoothed);
  if (j < 1.0) {
    throw DomainError("smoothed approximation requires j >= 1");
  }
  ChainParams p;
  p.stages = static_cast<int>(std::ceil(j));
  p.variant = ChainVariant::smoothed;
  p.shape = j;
  p.mean = tau;
  p.common_rate = j / tau;
  const double fj = fractional_part(j);
  const double root = std::sqrt(1.0 - fj * fj);
  const double scale = tau / (2.0 * j);
  set_tail(p, scale * (1.0 + fj - root), scale * (1.0 + fj + root));
  return p;
}

ChainParams regularized_smoothed(double j, double tau, const ApproxConfig& cfg) {
  check_inputs(j, tau);
  if (j < 1.0) throw DomainError("regularized smoothed approximation requires j >= 1");
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0)) {
    throw DomainError("regularization epsilon must lie in [0, 1)");
  }
  if (!(cfg.hbar >= 0.0)) throw DomainError("hbar must be non-negative");
  ChainParams p;
  p.stages = static_cast<int>(std::floor(j)) + 1;
  p.variant = ChainVariant::smoothed_regularized;
  p.shape = j;
  p.mean = tau;
  p.common_rate = j / tau;
  const double fj = fractional_part(j);
  const double root = std::sqrt(1.0 - fj * fj + cfg.hbar * cfg.hbar);
  const double scale = tau / (2.0 * j);
  set_tail(p, scale * (1.0 + fj - root + cfg.epsilon),
           scale * (1.0 + fj + root - cfg.epsilon));
  return p;
}

ChainParams make_chain(ChainVariant variant, double j, double tau,
                       const ApproxConfig& cfg) {
  switch (variant) {
    case ChainVariant::erlang: return erlang_approx(j, tau);
    case ChainVariant::fixed: return fixed_hypoexp(j, tau);
    case ChainVariant::smoothed: return smoothed_hypoexp(j, tau);
    case ChainVariant::smoothed_regularized: return regularized_smoothed(j, tau, cfg);
  }
  throw DomainError("unknown chain variant");
}

bool stiffness_check(const ChainParams& params, const ApproxConfig& cfg) {
  return params.max_rate() * params.mean / params.stages > cfg.stiffness_threshold;
}

}  // namespace gdde
