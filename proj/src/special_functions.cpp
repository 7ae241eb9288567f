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

#include "gdde/special_functions.hpp"

#include <cmath>
#include <limits>

#include "gdde/error.hpp"

namespace gdde {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// x^s e^{-x} / Gamma(s), evaluated in log space.
double prefactor(double s, double x) {
  return std::exp(s * std::log(x) - x - std::lgamma(s));
}

double lower_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < kMaxIterations; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * prefactor(s, x);
    }
  }
  throw SolverError("incomplete gamma series did not converge");
}

double upper_continued_fraction(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return h * prefactor(s, x);
    }
  }
  throw SolverError("incomplete gamma continued fraction did not converge");
}

void check_args(double s, double x) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("incomplete gamma: shape must be positive and finite");
  }
  if (!(x >= 0.0)) {
    throw DomainError("incomplete gamma: argument must be non-negative");
  }
}

}  // namespace

double regularized_gamma_p(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < s + 1.0) return lower_series(s, x);
  return 1.0 - upper_continued_fraction(s, x);
}

double regularized_gamma_q(double s, double x) {
  check_args(s, x);
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < s + 1.0) return 1.0 - lower_series(s, x);
  return upper_continued_fraction(s, x);
}

}  // namespace gdde
