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

// Desymmetrized Robin spectrum of the upper hemisphere: clusters of roots of
// the secular equation around each Neumann level ell(ell+1).

#ifndef HEMIROBIN_SPECTRUM_HPP_
#define HEMIROBIN_SPECTRUM_HPP_

#include <cstdint>
#include <vector>

namespace hemirobin::spectrum {

/// One desymmetrized eigenvalue Lambda_{ell,m}(sigma) = nu (nu + 1).
struct EigenvalueRecord {
  int ell = 0;
  int m = 0;
  double sigma = 0.0;
  double nu = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
  double rn_gap = 0.0;  // lambda - ell(ell+1)
  std::int64_t n = -1;  // global sorted index, -1 until assigned
};

/// The floor(ell/2)+1 eigenvalues descending from the Neumann level ell(ell+1),
/// sorted by lambda (which is also m ascending).
struct Cluster {
  int ell = 0;
  double sigma = 0.0;
  std::vector<EigenvalueRecord> entries;
  std::int64_t start_index = 0;
};

/// All complete clusters 0..ell_max, globally sorted by (lambda, ell, m).
struct Spectrum {
  double sigma = 0.0;
  int ell_max = 0;
  std::vector<EigenvalueRecord> eigenvalues;

  std::vector<double> lambdas() const;
};

/// floor(ell/2) + 1
int cluster_size(int ell);

/// sum_{ell' < ell} (floor(ell'/2) + 1), the global index of a cluster's
/// first eigenvalue.
std::int64_t cluster_start_index(int ell);

Cluster neumann_cluster(int ell);

/// Solves every admissible m for this ell. threads = 0 uses all cores.
Cluster robin_cluster(int ell, double sigma, unsigned threads = 1);

/// sigma = 0 is generated analytically; sigma > 0 solves every cluster.
Spectrum build_spectrum(double sigma, int ell_max, unsigned threads = 0);

/// delta (2 ell + 1 + delta)
double rn_gap_exact(const EigenvalueRecord& record);

/// Leading-order RN gap: (2 sigma/pi)(2 ell+1)/sqrt(ell^2-m^2) for m < ell,
/// (2 sigma/sqrt(pi)) sqrt(ell) for m = ell.
double gap_asymptotic(int ell, int m, double sigma);

/// Leading-order delta: 2 sigma/(pi sqrt(ell^2-m^2)) for m < ell,
/// sigma/sqrt(pi ell) for m = ell.
double delta_asymptotic(int ell, int m, double sigma);

}  // namespace hemirobin::spectrum

#endif  // HEMIROBIN_SPECTRUM_HPP_
