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

#include "gdde/history.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gdde/distributions.hpp"
#include "gdde/error.hpp"

namespace gdde {

HistoryFunction HistoryFunction::constant(double c) {
  HistoryFunction h;
  h.kind_ = Kind::constant;
  h.scale_ = c;
  h.smoothness_ = std::numeric_limits<int>::max();
  return h;
}

HistoryFunction HistoryFunction::exponential(double c, double rho) {
  HistoryFunction h;
  h.kind_ = Kind::exponential;
  h.scale_ = c;
  h.rate_ = rho;
  h.smoothness_ = std::numeric_limits<int>::max();
  return h;
}

HistoryFunction HistoryFunction::point_mass(double weight, double value_at_t0) {
  HistoryFunction h;
  h.kind_ = Kind::point_mass;
  h.mass_ = weight;
  h.scale_ = value_at_t0;
  h.smoothness_ = 0;
  return h;
}

HistoryFunction HistoryFunction::custom(std::function<double(double)> f, int smoothness) {
  if (!f) throw DomainError("custom history requires a callable");
  HistoryFunction h;
  h.kind_ = Kind::custom;
  h.custom_ = std::move(f);
  h.smoothness_ = smoothness;
  return h;
}

double HistoryFunction::operator()(double s) const {
  switch (kind_) {
    case Kind::constant:
      return scale_;
    case Kind::exponential:
      return scale_ * std::exp(rate_ * s);
    case Kind::point_mass:
      return 0.0;
    case Kind::custom:
      return custom_(s);
  }
  return 0.0;
}

double HistoryFunction::initial_value(double t0) const {
  if (kind_ == Kind::point_mass) return scale_;
  return (*this)(t0);
}

namespace {

bool all_equal(std::span<const double> rates) {
  return std::all_of(rates.begin(), rates.end(),
                     [&](double r) { return r == rates.front(); });
}

double chain_density(std::span<const double> rates, double s) {
  if (all_equal(rates)) {
    return gamma_pdf(GammaKernel(static_cast<double>(rates.size()), rates.front()), s);
  }
  return hypoexp_pdf(HypoexpKernel({rates.begin(), rates.end()}), s);
}

}  // namespace

double history_integral(const HistoryFunction& history, double t0,
                        std::span<const double> stage_rates) {
  if (stage_rates.empty()) throw DomainError("history integral needs at least one stage");
  switch (history.kind()) {
    case HistoryFunction::Kind::constant:
      return history.scale();
    case HistoryFunction::Kind::point_mass:
      return 0.0;
    case HistoryFunction::Kind::exponential: {
      // psi(t0 - s) = c e^{rho t0} e^{-rho s}; Laplace transform of the chain.
      const double rho = history.rate();
      double value = history.scale() * std::exp(rho * t0);
      for (double r : stage_rates) {
        if (r + rho <= 0.0) {
          throw DomainError("history integral diverges: exponential history decays "
                            "slower than the chain kernel");
        }
        value *= r / (r + rho);
      }
      return value;
    }
    case HistoryFunction::Kind::custom: {
      auto f = [&](double s) { return history(t0 - s) * chain_density(stage_rates, s); };
      double err = 0.0;
      const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          f, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13, &err);
      if (!std::isfinite(value) || !std::isfinite(err) ||
          err > 1e-6 * std::max(1.0, std::abs(value))) {
        throw DomainError("history integral diverges or failed to converge");
      }
      return value;
    }
  }
  return 0.0;
}

}  // namespace gdde
