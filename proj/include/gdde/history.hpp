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

#ifndef GDDE_HISTORY_HPP
#define GDDE_HISTORY_HPP

#include <functional>
#include <span>

namespace gdde {

/// Prescribed solution values psi(s) for s <= t0.
class HistoryFunction {
 public:
  enum class Kind { constant, exponential, point_mass, custom };

  /// psi(s) = c.
  static HistoryFunction constant(double c);
  /// psi(s) = c * exp(rho * s).
  static HistoryFunction exponential(double c, double rho);
  /// A Dirac mass of the given weight at t0. Regular values are zero except
  /// the state value at t0 itself, which is `value_at_t0`.
  static HistoryFunction point_mass(double weight, double value_at_t0 = 0.0);
  /// Arbitrary history; `smoothness` is the number of continuous derivatives.
  static HistoryFunction custom(std::function<double(double)> f, int smoothness = 4);

  /// Value at s (s <= t0 by contract; not checked).
  double operator()(double s) const;
  /// Value used as the initial state at t0.
  double initial_value(double t0) const;

  Kind kind() const noexcept { return kind_; }
  double scale() const noexcept { return scale_; }
  double rate() const noexcept { return rate_; }
  double mass() const noexcept { return mass_; }
  int smoothness() const noexcept { return smoothness_; }

 private:
  HistoryFunction() = default;

  Kind kind_ = Kind::constant;
  double scale_ = 0.0;
  double rate_ = 0.0;
  double mass_ = 0.0;
  int smoothness_ = 0;
  std::function<double(double)> custom_;
};

/// Integral of psi(t0 - s) f(s) over s in (0, inf), where f is the density of
/// the sum of independent exponential stages with the given rates. Closed form
/// for constant and exponential histories; adaptive Gauss-Kronrod otherwise.
/// Point masses contribute nothing (they bypass the integral). Throws
/// DomainError if the integral diverges.
double history_integral(const HistoryFunction& history, double t0,
                        std::span<const double> stage_rates);

}  // namespace gdde

#endif  // GDDE_HISTORY_HPP
