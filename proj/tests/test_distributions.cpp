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

#include <cmath>

#include "gdde/distributions.hpp"
#include "gdde/error.hpp"
#include "gdde/rng.hpp"
#include "gdde/special_functions.hpp"
#include "oracles.hpp"

using namespace gdde;

TEST(SpecialFunctions, IncompleteGammaComplement) {
  for (double s : {0.3, 1.0, 2.5, 7.0, 40.0}) {
    for (double x : {0.01, 0.5, 3.0, 10.0, 60.0}) {
      EXPECT_NEAR(regularized_gamma_p(s, x) + regularized_gamma_q(s, x), 1.0, 1e-13);
    }
  }
}

TEST(SpecialFunctions, IntegerShapeClosedForm) {
  // Q(3, x) = e^{-x}(1 + x + x^2/2)
  for (double x : {0.1, 1.0, 4.0, 12.0}) {
    EXPECT_NEAR(regularized_gamma_q(3.0, x), std::exp(-x) * (1 + x + x * x / 2), 1e-14);
  }
}

TEST(Gamma, DensityIntegratesToOneAndMatchesMoments) {
  for (double j : {0.7, 1.0, 2.3, 6.5}) {
    const GammaKernel g = GammaKernel::from_mean(j, 2.0);
    const double mass = oracle::half_line([&](double s) { return gamma_pdf(g, s); });
    const double mean = oracle::half_line([&](double s) { return s * gamma_pdf(g, s); });
    EXPECT_NEAR(mass, 1.0, 1e-9);
    EXPECT_NEAR(mean, 2.0, 1e-8);
    EXPECT_NEAR(g.variance(), 4.0 / j, 1e-14);
  }
}

TEST(Gamma, PdfAgreesWithDirectFormula) {
  const GammaKernel g(3.3, 1.7);
  for (double s : {0.05, 0.8, 2.0, 9.0}) {
    EXPECT_NEAR(gamma_pdf(g, s), oracle::gamma_density(3.3, 1.7, s), 1e-14);
  }
  EXPECT_THROW(gamma_pdf(g, -1.0), DomainError);
}

TEST(Gamma, SurvivalPlusCdfIsOne) {
  const GammaKernel g(2.5, 1.0);
  for (double t : {0.0, 0.5, 3.0, 10.0}) {
    EXPECT_NEAR(gamma_survival(g, t) + gamma_cdf(g, t), 1.0, 1e-14);
  }
  EXPECT_DOUBLE_EQ(gamma_survival(g, 0.0), 1.0);
}

TEST(Gamma, MgfClosedFormAndDomain) {
  const GammaKernel g(2.5, 2.0);
  EXPECT_NEAR(gamma_mgf(g, 0.5), std::pow(2.0 / 1.5, 2.5), 1e-14);
  EXPECT_THROW(gamma_mgf(g, 2.0), DomainError);
}

TEST(Gamma, RejectsBadParameters) {
  EXPECT_THROW(GammaKernel(0.0, 1.0), DomainError);
  EXPECT_THROW(GammaKernel(1.0, -1.0), DomainError);
  EXPECT_THROW(GammaKernel(std::nan(""), 1.0), DomainError);
}

TEST(Hypoexp, MomentsAreSumsOfStageMoments) {
  const HypoexpKernel k({1.0, 2.0, 5.0});
  const Moments m = hypoexp_moments(k);
  EXPECT_NEAR(m.mean, 1.0 + 0.5 + 0.2, 1e-15);
  EXPECT_NEAR(m.variance, 1.0 + 0.25 + 0.04, 1e-15);
  EXPECT_NEAR(hypoexp_mgf(k, 0.3), 1.0 / 0.7 * 2.0 / 1.7 * 5.0 / 4.7, 1e-14);
}

TEST(Hypoexp, SurvivalEqualsGammaForEqualRates) {
  const HypoexpKernel k({2.0, 2.0, 2.0, 2.0});
  const GammaKernel g(4.0, 2.0);
  for (double t : {0.1, 1.0, 2.5, 6.0}) {
    EXPECT_NEAR(hypoexp_survival(k, t), gamma_survival(g, t), 1e-12);
    EXPECT_NEAR(hypoexp_pdf(k, t), gamma_pdf(g, t), 1e-12);
  }
}

TEST(Hypoexp, TwoStageClosedForm) {
  const double a = 1.0, b = 3.0;
  const HypoexpKernel k({a, b});
  for (double t : {0.2, 1.0, 4.0}) {
    const double s = (b * std::exp(-a * t) - a * std::exp(-b * t)) / (b - a);
    EXPECT_NEAR(hypoexp_survival(k, t), s, 1e-13);
  }
}

TEST(Hypoexp, StageProbabilitiesSumToSurvival) {
  const HypoexpKernel k({1.0, 4.0, 4.0, 0.5});
  for (double t : {0.0, 0.7, 3.0}) {
    const auto p = hypoexp_stage_probabilities(k, t);
    double sum = 0.0;
    for (double v : p) {
      EXPECT_GE(v, -1e-15);
      sum += v;
    }
    EXPECT_NEAR(sum, hypoexp_survival(k, t), 1e-13);
  }
}

TEST(Sampling, GammaSampleMeanAndVariance) {
  Rng rng(11);
  const GammaKernel g(2.5, 0.5);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_gamma(rng, g);
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  EXPECT_NEAR(mean, 5.0, 0.05);
  EXPECT_NEAR(var, 10.0, 0.3);
}

TEST(Sampling, EquilibriumMeanIsSecondMomentOverTwiceMean) {
  // E[X^2]/(2E[X]) for shape j, rate a is (j + 1)/(2a).
  Rng rng(5);
  const GammaKernel g(4.0, 0.8);
  const int n = 200000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += sample_equilibrium_gamma(rng, g);
  EXPECT_NEAR(s / n, 5.0 / 1.6, 0.03);
}

TEST(Sampling, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_NE(x, c.uniform());
    EXPECT_GT(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}
