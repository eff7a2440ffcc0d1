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

// Eigenvalues of a spherical cap {theta <= theta0} under Dirichlet, Neumann
// or Robin conditions at the rim, found sector by sector from the regular
// solution P_nu^m(cos theta).

#ifndef HEMIROBIN_CAP_HPP_
#define HEMIROBIN_CAP_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "hemirobin/stats.hpp"

namespace hemirobin::cap {

enum class BoundaryKind { kDirichlet, kNeumann, kRobin };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::kDirichlet;
  double sigma = 0.0;  // used by kRobin only

  static BoundaryCondition dirichlet() { return {BoundaryKind::kDirichlet, 0.0}; }
  static BoundaryCondition neumann() { return {BoundaryKind::kNeumann, 0.0}; }
  static BoundaryCondition robin(double sigma) { return {BoundaryKind::kRobin, sigma}; }
};

/// "dirichlet" | "neumann" | "robin"
std::string to_string(BoundaryKind kind);
BoundaryKind parse_boundary_kind(const std::string& name);

struct CapProblem {
  double theta0 = 0.0;  // radians, in (0, pi)
  BoundaryCondition bc;
  double nu_max = 0.0;  // degrees are collected for nu < nu_max

  void validate() const;
};

struct CapEigenvalue {
  int m = 0;
  double nu = 0.0;
  double lambda = 0.0;
  double residual = 0.0;
};

struct CapSpectrum {
  CapProblem problem;
  std::vector<CapEigenvalue> eigenvalues;  // sorted by (lambda, m)
  std::vector<int> count_per_m;            // index m
  std::vector<std::string> warnings;

  std::vector<double> lambdas() const;
};

/// Boundary residual at the rim x0 = cos(theta0), evaluated on the
/// normalised Ferrers function (see specfun::legendre_P_normalized), which
/// has the same zeros in nu as P_nu^m itself:
///   Dirichlet: P(x0)
///   Neumann:   sin(theta0) P'(x0)
///   Robin:     sigma P(x0) - sin(theta0) P'(x0)
/// Requires nu > m - 1; no cap eigenvalue lies below sqrt(m^2 + 1/4) - 1/2.
double cap_residual(int m, double nu, const CapProblem& problem);

/// Lowest degree scanned in sector m.
double scan_start(int m);

/// Degrees nu < nu_max with zero residual in sector m, ascending.
std::vector<CapEigenvalue> sector_eigenvalues(int m, const CapProblem& problem,
                                              std::vector<std::string>* warnings = nullptr);

/// All eigenvalues with nu < nu_max, sectors m = 0, 1, ... until three
/// consecutive sectors are empty.
CapSpectrum cap_spectrum(const CapProblem& problem, unsigned threads = 0);

struct CapSpacingReport {
  stats::SpacingHistogram histogram;
  double ks_poisson = 0.0;  // KS distance of normalised spacings to 1 - exp(-s)
};

/// Needs at least 500 eigenvalues.
CapSpacingReport cap_spacing_report(const CapSpectrum& spectrum,
                                    const stats::SpacingBins& bins = {});
CapSpacingReport cap_spacing_report(const CapProblem& problem,
                                    const stats::SpacingBins& bins = {});

/// CSV: m,nu,lambda,residual
void write_cap_csv(std::ostream& out, const CapSpectrum& spectrum);

/// Counting function N(Lambda) = #{lambda_j <= Lambda}.
long long counting_function(const CapSpectrum& spectrum, double lambda);

/// Desymmetrised Weyl term area/(8 pi) Lambda, area = 2 pi (1 - cos theta0).
double weyl_count(double theta0, double lambda);

}  // namespace hemirobin::cap

#endif  // HEMIROBIN_CAP_HPP_
