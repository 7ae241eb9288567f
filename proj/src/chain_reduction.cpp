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

#include "gdde/chain_reduction.hpp"

#include <memory>
#include <string>
#include <utility>

#include "gdde/error.hpp"

namespace gdde {

std::string_view to_string(InitMode mode) {
  return mode == InitMode::paper_literal ? "paper_literal" : "kernel_consistent";
}

InitMode parse_init_mode(std::string_view name) {
  if (name == "paper_literal") return InitMode::paper_literal;
  if (name == "kernel_consistent") return InitMode::kernel_consistent;
  throw DomainError("unknown init mode: " + std::string(name));
}

ChainOdeProblem::ChainOdeProblem(ScalarDelayRhs rhs, ChainParams params,
                                 HistoryFunction history, double t0, double t_end,
                                 State initial)
    : rhs_(std::move(rhs)),
      params_(std::move(params)),
      rates_(params_.rates()),
      history_(std::move(history)),
      t0_(t0),
      t_end_(t_end),
      initial_(std::move(initial)) {
  if (!rhs_) throw DomainError("chain problem requires a right-hand side");
  if (initial_.size() != rates_.size() + 1) {
    throw DomainError("chain state must have one entry per stage plus the solution");
  }
}

double ChainOdeProblem::delayed_term(std::span<const double> state) const {
  return rates_.back() * state[rates_.size()];
}

void ChainOdeProblem::evaluate(double, std::span<const double> y,
                               std::span<double> dydt) const {
  const std::size_t n = rates_.size();
  dydt[0] = rhs_(y[0], rates_[n - 1] * y[n]);
  dydt[1] = y[0] - rates_[0] * y[1];
  for (std::size_t i = 1; i < n; ++i) {
    dydt[i + 1] = rates_[i - 1] * y[i] - rates_[i] * y[i + 1];
  }
}

OdeSystem ChainOdeProblem::system() const {
  OdeSystem sys;
  auto self = std::make_shared<const ChainOdeProblem>(*this);
  sys.rhs = [self](double t, std::span<const double> y, std::span<double> dydt) {
    self->evaluate(t, y, dydt);
  };
  sys.initial = initial_;
  sys.t0 = t0_;
  return sys;
}

namespace {

// Compartment i holds (1/r_i) times the history convolved with kernel k_i.
State chain_initial_state(const std::vector<double>& rates, const HistoryFunction& history,
                          double t0, bool literal_tail) {
  const std::size_t n = rates.size();
  State y(n + 1, 0.0);
  y[0] = history.initial_value(t0);
  if (history.kind() == HistoryFunction::Kind::point_mass) {
    y[1] = history.mass();
    return y;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> kernel_rates;
    const bool tail = literal_tail && n >= 2 && i + 2 >= n;
    if (tail) {
      kernel_rates.push_back(rates[i]);
    } else {
      kernel_rates.assign(rates.begin(), rates.begin() + static_cast<long>(i) + 1);
    }
    y[i + 1] = history_integral(history, t0, kernel_rates) / rates[i];
  }
  return y;
}

}  // namespace

ChainOdeProblem build_erlang_system(ScalarDelayRhs rhs, const ChainParams& params,
                                    const HistoryFunction& history, double t0,
                                    double t_end) {
  if (params.variant != ChainVariant::erlang) {
    throw DomainError("build_erlang_system requires erlang chain parameters");
  }
  State init = chain_initial_state(params.rates(), history, t0, false);
  return ChainOdeProblem(std::move(rhs), params, history, t0, t_end, std::move(init));
}

ChainOdeProblem build_hypoexp_system(ScalarDelayRhs rhs, const ChainParams& params,
                                     const HistoryFunction& history, double t0,
                                     double t_end, InitMode mode) {
  if (params.variant == ChainVariant::erlang) {
    throw DomainError("build_hypoexp_system requires hypoexponential chain parameters");
  }
  State init = chain_initial_state(params.rates(), history, t0,
                                   mode == InitMode::paper_literal);
  return ChainOdeProblem(std::move(rhs), params, history, t0, t_end, std::move(init));
}

ChainOdeProblem build_chain_system(ScalarDelayRhs rhs, const ChainParams& params,
                                   const HistoryFunction& history, double t0,
                                   double t_end, InitMode mode) {
  if (params.variant == ChainVariant::erlang) {
    return build_erlang_system(std::move(rhs), params, history, t0, t_end);
  }
  return build_hypoexp_system(std::move(rhs), params, history, t0, t_end, mode);
}

}  // namespace gdde
