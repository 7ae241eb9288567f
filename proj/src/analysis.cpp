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

#include "gdde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "gdde/distributions.hpp"
#include "gdde/error.hpp"
#include "gdde/problems.hpp"

namespace gdde {

namespace {

struct LineFit {
  double slope;
  double intercept;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("least-squares fit needs distinct abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace

ConvergenceReport estimate_order(std::span<const double> h, std::span<const double> error) {
  if (h.size() != error.size()) throw DomainError("h and error lengths differ");
  if (h.size() < 3) throw DomainError("order estimation needs at least 3 points");
  ConvergenceReport r;
  r.h.assign(h.begin(), h.end());
  r.error.assign(error.begin(), error.end());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0)) throw DomainError("step sizes must be positive");
    if (std::isfinite(error[i]) && error[i] >= kPrecisionFloor) {
      lx.push_back(std::log10(h[i]));
      ly.push_back(std::log10(error[i]));
    }
  }
  if (lx.size() < 2) throw DomainError("all errors are below the precision floor");
  const LineFit fit = least_squares(lx, ly);
  r.slope = fit.slope;
  r.intercept = fit.intercept;
  r.fitted = lx.size();
  return r;
}

double linear_test_analytic(double t) {
  const double w = std::sqrt(29.0) / 10.0;
  const double b = -2.0 / std::sqrt(29.0);
  return std::exp(-t / 10.0) * (std::cos(w * t) + b * std::sin(w * t));
}

namespace {

std::vector<double> chain_reference(const ProblemSpec& spec, std::span<const double> times) {
  const Trajectory tr = solve_chain(spec, ChainVariant::erlang, times, 1e-12);
  return tr.component(0);
}

}  // namespace

std::vector<double> linear_test_reference(int j, std::span<const double> times) {
  if (j < 1) throw DomainError("reference solutions need a positive integer shape");
  if (j == 1) {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) out.push_back(linear_test_analytic(t));
    return out;
  }
  ProblemSpec spec = linear_test_problem(j, 1.0, times.empty() ? 1.0 : times.back());
  return chain_reference(spec, times);
}

std::vector<double> nonlinear_test_reference(int j, std::span<const double> times) {
  if (j < 1) throw DomainError("reference solutions need a positive integer shape");
  ProblemSpec spec = nonlinear_test_problem(j, 2.25, 2.0, times.empty() ? 1.0 : times.back());
  return chain_reference(spec, times);
}

double char_root(double tau, double j, double beta) {
  if (!(tau > 0.0) || !(j > 0.0)) throw DomainError("char_root needs tau > 0 and j > 0");
  const double a = j / tau;
  if (!(beta > 0.0) || !(beta < std::pow(2.0, j + 1.0) * a)) {
    throw DomainError("char_root needs 0 < beta < 2^(j+1) a");
  }
  return std::pow(beta * std::pow(a, j), 1.0 / (j + 1.0)) - a;
}

MgfErrorSeries mgf_errors(double j, double tau, ChainVariant variant, int points) {
  if (points < 2) throw DomainError("mgf_errors needs at least two points");
  const ChainParams params = make_chain(variant, j, tau);
  const std::vector<double> rates = params.rates();
  const double a = j / tau;
  MgfErrorSeries out;
  for (int i = 0; i < points; ++i) {
    const double r = std::pow(10.0, -3.0 + 2.0 * i / (points - 1));
    const double phi = r * a;
    const double log_gamma = -j * std::log1p(r);
    double log_chain = 0.0;
    for (double rate : rates) log_chain -= std::log1p(phi / rate);
    out.phi_over_a.push_back(r);
    out.error.push_back(std::abs(std::exp(log_chain) * std::expm1(log_gamma - log_chain)));
  }
  return out;
}

double mgf_error_order(double j, double tau, ChainVariant variant) {
  const MgfErrorSeries s = mgf_errors(j, tau, variant);
  return estimate_order(s.phi_over_a, s.error).slope;
}

SurvivalTriple survival_compare(double j, double tau, double t) {
  return {gamma_survival(GammaKernel::from_mean(j, tau), t),
          hypoexp_survival(fixed_hypoexp(j, tau).kernel(), t),
          hypoexp_survival(smoothed_hypoexp(j, tau).kernel(), t)};
}

SurvivalJump integer_jump(int j0, double tau, double t, double delta) {
  const double lo = j0 - delta;
  const double hi = j0 + delta;
  const SurvivalTriple below = survival_compare(lo, tau, t);
  const SurvivalTriple above = survival_compare(hi, tau, t);
  return {std::abs(above.fixed - below.fixed), std::abs(above.smoothed - below.smoothed)};
}

std::complex<double> dominant_eigenvalue(double alpha, double beta, const ChainParams& params) {
  const std::vector<double> r = params.rates();
  const Eigen::Index n = static_cast<Eigen::Index>(r.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m(0, 0) = alpha;
  m(0, n) = beta * r.back();
  m(1, 0) = 1.0;
  m(1, 1) = -r[0];
  for (Eigen::Index i = 1; i < n; ++i) {
    m(i + 1, i) = r[static_cast<std::size_t>(i - 1)];
    m(i + 1, i + 1) = -r[static_cast<std::size_t>(i)];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
  if (solver.info() != Eigen::Success) throw SolverError("eigenvalue iteration did not converge");
  const auto ev = solver.eigenvalues();
  std::complex<double> best = ev(0);
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    if (ev(i).real() > best.real()) best = ev(i);
  }
  return best;
}

double growth_rate(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 3) {
    throw DomainError("growth_rate needs matching samples");
  }
  const double t_mid = 0.5 * (times.front() + times.back());
  std::vector<double> pt, pv;
  for (std::size_t k = 1; k + 1 < times.size(); ++k) {
    if (times[k] < t_mid) continue;
    const double v = std::abs(values[k]);
    if (v > std::abs(values[k - 1]) && v >= std::abs(values[k + 1]) && v > 0.0) {
      pt.push_back(times[k]);
      pv.push_back(std::log(v));
    }
  }
  if (pt.size() < 4) throw DomainError("growth_rate needs at least 4 peaks");
  return least_squares(pt, pv).slope;
}

double MomentPolynomial::operator()(double x) const {
  double acc = 0.0;
  for (double c : coeffs) acc = acc * x + c;
  return acc;
}

std::vector<std::complex<double>> MomentPolynomial::roots() const {
  const Eigen::Index deg = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (Eigen::Index k = 0; k < deg; ++k) {
    companion(0, k) = -coeffs[static_cast<std::size_t>(k + 1)] / coeffs[0];
  }
  for (Eigen::Index k = 1; k < deg; ++k) companion(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw SolverError("companion eigenvalues failed");
  std::vector<std::complex<double>> out;
  for (Eigen::Index k = 0; k < deg; ++k) out.push_back(solver.eigenvalues()(k));
  return out;
}

MomentPolynomial fm_polynomial(int m, double fj) {
  if (m < 0) throw DomainError("polynomial degree must be non-negative");
  if (!(fj > 0.0 && fj < 1.0)) throw DomainError("fractional part must lie in (0, 1)");
  MomentPolynomial p;
  p.m = m;
  p.fj = fj;
  p.coeffs.assign(static_cast<std::size_t>(m) + 1, 0.0);
  double pochhammer = 1.0;
  double factorial = 1.0;
  p.coeffs[0] = 1.0;
  for (int k = 1; k <= m; ++k) {
    pochhammer *= m - k + fj;
    factorial *= k;
    p.coeffs[static_cast<std::size_t>(k)] = (k % 2 ? -1.0 : 1.0) * pochhammer / factorial;
  }
  return p;
}

std::vector<double> real_roots(const MomentPolynomial& poly, double imag_tol) {
  std::vector<double> out;
  for (const auto& z : poly.roots()) {
    if (std::abs(z.imag()) < imag_tol * (1.0 + std::abs(z.real()))) out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int real_root_count(const MomentPolynomial& poly, double imag_tol) {
  return static_cast<int>(real_roots(poly, imag_tol).size());
}

double gm_value(int m, double fj, double x) {
  if (m == 0) return 1.0;
  const MomentPolynomial p = fm_polynomial(m, fj);
  double acc = 0.0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

GmCheckRecord gm_checks(int m, double fj) {
  if (m < 1) throw DomainError("gm_checks needs m >= 1");
  GmCheckRecord rec;
  rec.value_at_zero = gm_value(m, fj, 0.0) == 1.0;

  // (-1)^m binom(m - 2 + fj, m) with a generalized binomial coefficient.
  double binom = 1.0;
  for (int k = 0; k < m; ++k) binom *= (m - 2 + fj - k) / (k + 1.0);
  const double expected = (m % 2 ? -1.0 : 1.0) * binom;
  const double g1 = gm_value(m, fj, 1.0);
  const bool sign_ok = (m % 2 == 1) ? g1 > 0.0 : g1 < 0.0;
  rec.sign_at_one =
      sign_ok && std::abs(g1 - expected) <= 1e-10 * std::max(1.0, std::abs(expected));

  rec.derivative_recurrence = true;
  const double step = 1e-3;
  for (int i = 1; i <= 20; ++i) {
    const double x = i / 21.0;
    const double fd = (-gm_value(m, fj, x + 2 * step) + 8 * gm_value(m, fj, x + step) -
                       8 * gm_value(m, fj, x - step) + gm_value(m, fj, x - 2 * step)) /
                      (12 * step);
    const double rhs = -(m - 1 + fj) * gm_value(m - 1, fj, x);
    if (std::abs(fd - rhs) > 1e-6 * std::max(1.0, std::abs(rhs))) {
      rec.derivative_recurrence = false;
    }
  }

  rec.odd_lower_bound = true;
  if (m % 2 == 1) {
    for (int i = 1; i < 100; ++i) {
      const double x = i / 100.0;
      if (!(gm_value(m, fj, x) > std::pow(1.0 - x, m))) rec.odd_lower_bound = false;
    }
  }

  rec.even_single_root = true;
  if (m % 2 == 0) {
    // Roots of g_m in (0, 1] are reciprocals of roots of f_m in [1, inf).
    int count = 0;
    for (double r : real_roots(fm_polynomial(m, fj))) {
      if (r >= 1.0 - 1e-12) ++count;
    }
    rec.even_single_root = count == 1;
  }
  return rec;
}

}  // namespace gdde
