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

#ifndef GDDE_ERROR_HPP
#define GDDE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gdde {

// Argument outside the mathematical domain of an operation (negative time,
// MGF evaluated past its abscissa of convergence, invalid shape, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Numerical failure during integration or optimization. Carries the index
// of the step (or evaluation) at which the failure was detected, or -1.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what, long step = -1)
      : std::runtime_error(what), step_(step) {}

  long step() const noexcept { return step_; }

 private:
  long step_;
};

}  // namespace gdde

#endif  // GDDE_ERROR_HPP
