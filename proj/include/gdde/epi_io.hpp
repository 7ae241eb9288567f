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

#ifndef GDDE_EPI_IO_HPP
#define GDDE_EPI_IO_HPP

#include <string>

#include "gdde/epi.hpp"

namespace gdde {

/// `t,count` rows.
void write_cases_csv(const std::string& path, const EpiData& data);
/// `interval` rows.
void write_serial_csv(const std::string& path, const EpiData& data);

/// Both readers require the header row and throw DomainError on malformed
/// input.
void read_cases_csv(const std::string& path, EpiData& data);
void read_serial_csv(const std::string& path, EpiData& data);

/// Shortest text that parses back to the same double (17 significant digits).
std::string format_double(double v);

}  // namespace gdde

#endif  // GDDE_EPI_IO_HPP
