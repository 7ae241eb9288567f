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

#include "gdde/epi_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "gdde/error.hpp"

namespace gdde {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw DomainError("cannot write " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot read " + path);
  return f;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& path, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw DomainError(path + ":" + std::to_string(line) + ": not a number: '" + text + "'");
  }
  return v;
}

}  // namespace

void write_cases_csv(const std::string& path, const EpiData& data) {
  auto f = open_out(path);
  f << "t,count\n";
  for (std::size_t k = 0; k < data.cases.size(); ++k) {
    f << format_double(data.times[k]) << ',' << data.cases[k] << '\n';
  }
}

void write_serial_csv(const std::string& path, const EpiData& data) {
  auto f = open_out(path);
  f << "interval\n";
  for (double t : data.serial) f << format_double(t) << '\n';
}

void read_cases_csv(const std::string& path, EpiData& data) {
  auto f = open_in(path);
  std::string line;
  if (!std::getline(f, line) || trim(line) != "t,count") {
    throw DomainError(path + ": expected header 't,count'");
  }
  data.times.clear();
  data.cases.clear();
  int n = 1;
  while (std::getline(f, line)) {
    ++n;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError(path + ":" + std::to_string(n) + ": expected two columns");
    const double t = parse_number(trim(line.substr(0, comma)), path, n);
    const double c = parse_number(trim(line.substr(comma + 1)), path, n);
    if (c < 0.0 || c != static_cast<double>(static_cast<long>(c))) {
      throw DomainError(path + ":" + std::to_string(n) + ": counts must be non-negative integers");
    }
    data.times.push_back(t);
    data.cases.push_back(static_cast<long>(c));
  }
}

void read_serial_csv(const std::string& path, EpiData& data) {
  auto f = open_in(path);
  std::string line;
  if (!std::getline(f, line) || trim(line) != "interval") {
    throw DomainError(path + ": expected header 'interval'");
  }
  data.serial.clear();
  int n = 1;
  while (std::getline(f, line)) {
    ++n;
    line = trim(line);
    if (line.empty()) continue;
    const double t = parse_number(line, path, n);
    if (!(t >= 0.0)) throw DomainError(path + ":" + std::to_string(n) + ": intervals must be >= 0");
    data.serial.push_back(t);
  }
}

}  // namespace gdde
