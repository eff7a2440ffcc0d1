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

// CSV and JSON forms of a Spectrum. CSV columns:
//   n,ell,m,sigma,nu,lambda,delta,rn_gap
// with every real printed at 17 significant digits.

#ifndef HEMIROBIN_SPECTRUM_IO_HPP_
#define HEMIROBIN_SPECTRUM_IO_HPP_

#include <iosfwd>
#include <string>

#include "hemirobin/spectrum.hpp"

namespace hemirobin::io {

inline constexpr const char* kSpectrumCsvHeader = "n,ell,m,sigma,nu,lambda,delta,rn_gap";

/// %.17g
std::string format_real(double v);

void write_spectrum_csv(std::ostream& out, const spectrum::Spectrum& s);
void write_spectrum_json(std::ostream& out, const spectrum::Spectrum& s);

/// Parses the CSV written above. ell_max is recovered from the records and
/// sigma from the first row (0 for an empty table). Throws DomainError on a
/// malformed table.
spectrum::Spectrum read_spectrum_csv(std::istream& in);

}  // namespace hemirobin::io

#endif  // HEMIROBIN_SPECTRUM_IO_HPP_
