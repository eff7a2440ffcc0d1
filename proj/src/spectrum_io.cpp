// Copyright 2026 The hemirobin Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hemirobin/spectrum_io.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hemirobin/errors.hpp"

namespace hemirobin::io {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    fields.push_back(field);
  }
  return fields;
}

double parse_real(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) {
    throw DomainError("bad real field '" + s + "'");
  }
  return v;
}

long long parse_integer(const std::string& s) {
  std::size_t used = 0;
  const long long v = std::stoll(s, &used);
  if (used != s.size()) {
    throw DomainError("bad integer field '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_spectrum_csv(std::ostream& out, const spectrum::Spectrum& s) {
  out << kSpectrumCsvHeader << '\n';
  for (const auto& e : s.eigenvalues) {
    out << e.n << ',' << e.ell << ',' << e.m << ',' << format_real(e.sigma) << ','
        << format_real(e.nu) << ',' << format_real(e.lambda) << ','
        << format_real(e.delta) << ',' << format_real(e.rn_gap) << '\n';
  }
}

void write_spectrum_json(std::ostream& out, const spectrum::Spectrum& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : s.eigenvalues) {
    arr.push_back({{"n", e.n},
                   {"ell", e.ell},
                   {"m", e.m},
                   {"sigma", e.sigma},
                   {"nu", e.nu},
                   {"lambda", e.lambda},
                   {"delta", e.delta},
                   {"rn_gap", e.rn_gap}});
  }
  out << arr.dump(1) << '\n';
}

spectrum::Spectrum read_spectrum_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DomainError("spectrum CSV: empty input");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kSpectrumCsvHeader) {
    throw DomainError("spectrum CSV: unexpected header '" + line + "'");
  }
  spectrum::Spectrum s;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 8) {
      throw DomainError("spectrum CSV: line " + std::to_string(line_no) +
                        " has " + std::to_string(f.size()) + " fields");
    }
    spectrum::EigenvalueRecord r;
    try {
      r.n = parse_integer(f[0]);
      r.ell = static_cast<int>(parse_integer(f[1]));
      r.m = static_cast<int>(parse_integer(f[2]));
      r.sigma = parse_real(f[3]);
      r.nu = parse_real(f[4]);
      r.lambda = parse_real(f[5]);
      r.delta = parse_real(f[6]);
      r.rn_gap = parse_real(f[7]);
    } catch (const std::logic_error& e) {
      throw DomainError("spectrum CSV: line " + std::to_string(line_no) + ": " + e.what());
    }
    s.eigenvalues.push_back(r);
  }
  if (!s.eigenvalues.empty()) {
    s.sigma = s.eigenvalues.front().sigma;
    s.ell_max = std::max_element(s.eigenvalues.begin(), s.eigenvalues.end(),
                                 [](const auto& a, const auto& b) { return a.ell < b.ell; })
                    ->ell;
  }
  return s;
}

}  // namespace hemirobin::io
