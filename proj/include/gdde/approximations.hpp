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

#ifndef GDDE_APPROXIMATIONS_HPP
#define GDDE_APPROXIMATIONS_HPP

#include <string_view>
#include <vector>

#include "gdde/distributions.hpp"

namespace gdde {

enum class ChainVariant { erlang, fixed, smoothed, smoothed_regularized };

std::string_view to_string(ChainVariant variant);
/// Accepts "erlang", "fixed", "smoothed", "smoothed_regularized" (alias
/// "regularized"). Throws DomainError otherwise.
ChainVariant parse_chain_variant(std::string_view name);

struct ApproxConfig {
  /// Offset that keeps the two tail stages of the regularized smoothed
  /// variant away from infinite rates.
  double epsilon = 1e-3;
  /// Regularizer added under the square root, sqrt(1 - {j}^2 + hbar^2).
  double hbar = 1e-3;
  /// Fastest rate relative to the mean stage rate n / tau.
  double stiffness_threshold = 10.0;
};

/// Rates of an n-stage chain approximating a gamma kernel with shape j and
/// mean tau. Stages 1..n-2 share common_rate, stage n-1 has rate nu and stage
/// n has rate mu. A single-stage chain only uses mu.
struct ChainParams {
  int stages = 1;
  double common_rate = 0.0;
  double nu = 0.0;
  double mu = 0.0;
  ChainVariant variant = ChainVariant::erlang;
  double shape = 0.0;
  double mean = 0.0;

  /// Stage rates in traversal order, one per stage.
  std::vector<double> rates() const;
  HypoexpKernel kernel() const { return HypoexpKernel(rates()); }
  double max_rate() const;
};

/// [x]: nearest integer, halves rounded away from zero, never below 1.
int nearest_shape(double j);

/// Fractional part j - floor(j).
double fractional_part(double j);

/// Mean-matching Erlang chain with shape [j] and rate [j]/tau.
ChainParams erlang_approx(double j, double tau);

/// Two-moment match with n = max(ceil(j), 2) stages and common rate n/tau.
/// Integer j yields the exact Erlang chain. Throws DomainError when no
/// positive tail rate exists (j <= 1 and not an integer).
ChainParams fixed_hypoexp(double j, double tau);

/// Two-moment match with common rate j/tau, which varies continuously in j.
/// Integer j yields the exact Erlang chain. Requires j >= 1.
ChainParams smoothed_hypoexp(double j, double tau);

/// Smoothed variant with the tail reciprocals shifted by -/+ epsilon and hbar^2
/// added under the square root. Uses n = floor(j) + 1 stages for every j >= 1,
/// so the mean is matched exactly and the rates stay bounded at integer j.
ChainParams regularized_smoothed(double j, double tau, const ApproxConfig& cfg);

ChainParams make_chain(ChainVariant variant, double j, double tau,
                       const ApproxConfig& cfg = {});

/// True when the fastest rate exceeds cfg.stiffness_threshold times n/tau.
bool stiffness_check(const ChainParams& params, const ApproxConfig& cfg = {});

}  // namespace gdde

#endif  // GDDE_APPROXIMATIONS_HPP
