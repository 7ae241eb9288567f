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

#ifndef GDDE_SPECIAL_FUNCTIONS_HPP
#define GDDE_SPECIAL_FUNCTIONS_HPP

namespace gdde {

// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
double regularized_gamma_p(double s, double x);

// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s).
//
// Uses the power series for P when x < s + 1 and the Legendre continued
// fraction (modified Lentz) for Q otherwise, so the returned tail keeps full
// relative precision deep into the right tail.
double regularized_gamma_q(double s, double x);

}  // namespace gdde

#endif  // GDDE_SPECIAL_FUNCTIONS_HPP
