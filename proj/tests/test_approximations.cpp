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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gdde/approximations.hpp"
#include "gdde/distributions.hpp"
#include "gdde/error.hpp"
#include "gdde/rng.hpp"

using namespace gdde;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Approximations, ErlangRoundsShape) {
  const ChainParams p = erlang_approx(2.6, 2.0);
  EXPECT_EQ(p.stages, 3);
  EXPECT_DOUBLE_EQ(p.common_rate, 1.5);
  EXPECT_EQ(erlang_approx(0.3, 1.0).stages, 1);
  EXPECT_DOUBLE_EQ(hypoexp_moments(p.kernel()).mean, 2.0);
}

TEST(Approximations, FixedMatchesTwoMoments) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double j = 1.01 + 25.0 * rng.uniform();
    const double tau = 0.1 + 10.0 * rng.uniform();
    const ChainParams p = fixed_hypoexp(j, tau);
    EXPECT_EQ(p.stages, std::max(2, static_cast<int>(std::ceil(j))));
    const Moments m = hypoexp_moments(p.kernel());
    EXPECT_LT(rel(m.mean, tau), 1e-12);
    EXPECT_LT(rel(m.variance, tau * tau / j), 1e-12);
  }
}

TEST(Approximations, SmoothedMatchesTwoMoments) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    const double j = 1.0 + 25.0 * rng.uniform();
    const double tau = 0.1 + 10.0 * rng.uniform();
    const ChainParams p = smoothed_hypoexp(j, tau);
    EXPECT_DOUBLE_EQ(p.common_rate, j / tau);
    const Moments m = hypoexp_moments(p.kernel());
    EXPECT_LT(rel(m.mean, tau), 1e-12);
    EXPECT_LT(rel(m.variance, tau * tau / j), 1e-12);
  }
}

TEST(Approximations, IntegerShapeGivesErlangRates) {
  for (int n : {1, 2, 3, 7}) {
    for (ChainVariant v : {ChainVariant::erlang, ChainVariant::fixed, ChainVariant::smoothed}) {
      const ChainParams p = make_chain(v, n, 2.0);
      const auto r = p.rates();
      ASSERT_EQ(static_cast<int>(r.size()), n) << to_string(v);
      for (double x : r) EXPECT_EQ(x, n / 2.0) << to_string(v);
    }
  }
}

TEST(Approximations, FixedRejectsShapeBelowOne) {
  EXPECT_THROW(fixed_hypoexp(0.5, 1.0), DomainError);
  EXPECT_THROW(smoothed_hypoexp(0.9, 1.0), DomainError);
  EXPECT_THROW(fixed_hypoexp(2.0, 0.0), DomainError);
}

TEST(Approximations, SmoothedContinuousAcrossIntegers) {
  const double t = 4.0;
  for (int j0 : {2, 3, 5}) {
    const double lo = hypoexp_survival(smoothed_hypoexp(j0 - 1e-7, 1.0).kernel(), t);
    const double hi = hypoexp_survival(smoothed_hypoexp(j0 + 1e-7, 1.0).kernel(), t);
    EXPECT_LT(std::abs(hi - lo), 1e-5);
  }
}

TEST(Approximations, RegularizedStagesAndMean) {
  const ChainParams p = regularized_smoothed(2.5, 3.0, ApproxConfig{});
  EXPECT_EQ(p.stages, 3);
  EXPECT_NEAR(hypoexp_moments(p.kernel()).mean, 3.0, 1e-10);
  EXPECT_TRUE(std::isfinite(p.max_rate()));
  const ChainParams q = regularized_smoothed(3.0, 3.0, ApproxConfig{});
  EXPECT_TRUE(std::isfinite(q.max_rate()));
}

TEST(Approximations, StiffnessFlagsLargeRates) {
  const ChainParams near_integer = smoothed_hypoexp(3.001, 1.0);
  EXPECT_TRUE(stiffness_check(near_integer));
  EXPECT_FALSE(stiffness_check(erlang_approx(4.0, 1.0)));
  ApproxConfig loose;
  loose.stiffness_threshold = 1e9;
  EXPECT_FALSE(stiffness_check(near_integer, loose));
}

TEST(Approximations, ShapeHelpers) {
  EXPECT_EQ(nearest_shape(2.5), 3);
  EXPECT_EQ(nearest_shape(0.2), 1);
  EXPECT_NEAR(fractional_part(3.25), 0.25, 1e-15);
  EXPECT_EQ(parse_chain_variant("smoothed_regularized"), ChainVariant::smoothed_regularized);
  EXPECT_THROW(parse_chain_variant("bogus"), DomainError);
}

TEST(Approximations, RegularizedVarianceWithinRegularizationBound) {
  for (double eps : {1e-3, 1e-2, 0.1}) {
    for (double hbar : {1e-3, 1e-2, 0.1}) {
      ApproxConfig cfg;
      cfg.epsilon = eps;
      cfg.hbar = hbar;
      for (double j = 1.01; j < 21.0; j += 0.05) {
        const Moments m = hypoexp_moments(regularized_smoothed(j, 2.0, cfg).kernel());
        const double target = 4.0 / j;
        EXPECT_NEAR(m.mean, 2.0, 1e-12);
        EXPECT_LE(std::abs(m.variance - target), 2.0 * (eps + hbar * hbar) * target) << j;
      }
    }
  }
}

TEST(Approximations, StiffnessExamples) {
  EXPECT_TRUE(stiffness_check(fixed_hypoexp(1.05, 1.0)));
  ApproxConfig cfg;
  cfg.stiffness_threshold = 50.0;
  EXPECT_FALSE(stiffness_check(fixed_hypoexp(2.5, 1.0), cfg));
  EXPECT_FALSE(stiffness_check(fixed_hypoexp(5.0, 1.0)));
}

TEST(Approximations, StageOrderDoesNotChangeDistribution) {
  std::vector<double> r = smoothed_hypoexp(3.4, 2.0).rates();
  const HypoexpKernel forward(r);
  std::reverse(r.begin(), r.end());
  const HypoexpKernel backward(r);
  for (double t : {0.3, 1.5, 4.0}) {
    EXPECT_NEAR(hypoexp_survival(forward, t), hypoexp_survival(backward, t), 1e-13);
  }
}

TEST(Approximations, SmoothedTailExample) {
  const ChainParams p = smoothed_hypoexp(2.5, 1.0);
  EXPECT_DOUBLE_EQ(p.common_rate, 2.5);
  double inv = 0.0, inv2 = 0.0;
  for (double x : p.rates()) {
    inv += 1.0 / x;
    inv2 += 1.0 / (x * x);
  }
  EXPECT_NEAR(inv, 1.0, 1e-14);
  EXPECT_NEAR(inv2, 0.4, 1e-14);
  EXPECT_NEAR(std::max(1.0 / p.nu, 1.0 / p.mu), 0.4732051, 1e-7);
}
