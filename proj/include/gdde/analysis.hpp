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

#ifndef GDDE_ANALYSIS_HPP
#define GDDE_ANALYSIS_HPP

#include <complex>
#include <span>
#include <vector>

#include "gdde/approximations.hpp"
#include "gdde/ode_solver.hpp"

namespace gdde {

/// Errors against step sizes with a least-squares fit of log10 E on log10 h.
struct ConvergenceReport {
  std::vector<double> h;
  std::vector<double> error;
  double slope = 0.0;
  double intercept = 0.0;
  /// Number of points above the precision floor that entered the fit.
  std::size_t fitted = 0;
};

/// Smallest error that still counts toward the fit.
inline constexpr double kPrecisionFloor = 100.0 * 2.220446049250313e-16;

/// Throws DomainError with fewer than 3 points, non-positive h, or fewer than
/// 2 points above the precision floor.
ConvergenceReport estimate_order(std::span<const double> h, std::span<const double> error);

/// j = 1 closed form of the linear test problem with constant unit history.
double linear_test_analytic(double t);

/// Reference solutions for the linear (tau = 1) and nonlinear (tau = 2.25,
/// K = 2) test problems with unit history. Integer j only; j = 1 of the
/// linear problem uses the closed form, everything else rk45 at 1e-12.
std::vector<double> linear_test_reference(int j, std::span<const double> times);
std::vector<double> nonlinear_test_reference(int j, std::span<const double> times);

/// lambda = (beta a^j)^{1/(j+1)} - a with a = j/tau. Requires
/// 0 < beta < 2^{j+1} a.
double char_root(double tau, double j, double beta);

/// |M_X(-phi) - M_approx(-phi)| for phi/a in logspace(1e-3, 1e-1, points).
struct MgfErrorSeries {
  std::vector<double> phi_over_a;
  std::vector<double> error;
};
MgfErrorSeries mgf_errors(double j, double tau, ChainVariant variant, int points = 10);
/// Log-log slope of mgf_errors. Throws DomainError when the errors vanish
/// (integer j).
double mgf_error_order(double j, double tau, ChainVariant variant);

struct SurvivalTriple {
  double gamma;
  double fixed;
  double smoothed;
};
SurvivalTriple survival_compare(double j, double tau, double t);

struct SurvivalJump {
  double fixed;
  double smoothed;
};
SurvivalJump integer_jump(int j0, double tau, double t, double delta = 1e-6);

/// Eigenvalue with the largest real part of the linear chain system for
/// F(x, I) = alpha x + beta I.
std::complex<double> dominant_eigenvalue(double alpha, double beta,
                                         const ChainParams& params);

/// Least-squares slope of log peak amplitude against time, using local
/// maxima of |x| in the second half of the horizon. Throws DomainError with
/// fewer than 4 peaks.
double growth_rate(std::span<const double> times, std::span<const double> values);

/// f_m(x) = sum_k (-1)^k x^{m-k} (m-1+fj)_k / k!, with falling Pochhammer
/// symbols (z)_k.
struct MomentPolynomial {
  int m = 1;
  double fj = 0.5;
  /// Coefficient of x^{m-k} at index k (index 0 is the leading 1).
  std::vector<double> coeffs;

  double operator()(double x) const;
  std::vector<std::complex<double>> roots() const;
};

MomentPolynomial fm_polynomial(int m, double fj);

/// Roots with |Im| < imag_tol (1 + |Re|) count as real.
int real_root_count(const MomentPolynomial& poly, double imag_tol = 1e-7);
std::vector<double> real_roots(const MomentPolynomial& poly, double imag_tol = 1e-7);

/// g_m(x) = x^m f_m(1/x).
double gm_value(int m, double fj, double x);

struct GmCheckRecord {
  bool value_at_zero = false;
  bool sign_at_one = false;
  bool derivative_recurrence = false;
  /// Odd m only; true for even m.
  bool odd_lower_bound = false;
  /// Even m only; true for odd m.
  bool even_single_root = false;

  bool passed() const noexcept {
    return value_at_zero && sign_at_one && derivative_recurrence && odd_lower_bound &&
           even_single_root;
  }
};
GmCheckRecord gm_checks(int m, double fj);

}  // namespace gdde

#endif  // GDDE_ANALYSIS_HPP
