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

// Statistics over hemisphere spectra: the within-cluster RN gap law, cluster
// means, lambda^(1/4) gap constants and nearest-neighbour level spacings.

#ifndef HEMIROBIN_STATS_HPP_
#define HEMIROBIN_STATS_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "hemirobin/spectrum.hpp"

namespace hemirobin::stats {

/// RN gaps of one cluster. gaps are ordered by m ascending.
struct GapSample {
  int ell = 0;
  double sigma = 0.0;
  std::vector<double> gaps;
};

/// Gaps of the m < ell entries. The m = ell gap grows like sqrt(ell) and is
/// left out of distribution comparisons.
GapSample gap_sample(const spectrum::Cluster& cluster);

/// Limit CDF of within-cluster RN gaps: 0 for y <= 4 sigma/pi, otherwise
/// sqrt(1 - (4 sigma/(pi y))^2).
double szego_cdf(double y, double sigma);

/// 16 sigma^2 / (pi^2 y^3 sqrt(1 - (4 sigma/(pi y))^2)) on (4 sigma/pi, inf).
double szego_density(double y, double sigma);

/// Arithmetic mean of the RN gaps of all entries.
double cluster_gap_mean(const spectrum::Cluster& cluster);

/// Sup distance between the empirical CDF of a sample and a continuous CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);

/// KS distance of a GapSample (ell >= 50, complete cluster) to szego_cdf.
double szego_ks_distance(const GapSample& sample);

struct GapBoundConstants {
  double upper = 0.0;          // max_{n>=1} d_n / (lambda_n(0)^(1/4) sigma)
  std::int64_t upper_argmax = -1;
  double lower = 0.0;          // max over ell of the same ratio on the m = ell family
  int lower_argmax_ell = -1;
  double top_ratio_at_ell_max = 0.0;  // the m = ell ratio at ell = ell_max
  std::vector<double> top_gaps;       // d_{ell,ell}, ell = 0..ell_max
};

/// Empirical constants of the lambda^(1/4) RN-gap bounds from a Robin
/// spectrum and the Neumann spectrum with the same ell_max.
GapBoundConstants gap_bound_constants(const spectrum::Spectrum& robin,
                                      const spectrum::Spectrum& neumann);

struct SpacingBins {
  double lo = 0.0;
  double hi = 5.0;
  int count = 100;
};

/// Histogram of unit-mean nearest-neighbour spacings. Spacings at or above
/// the last edge are tallied in `overflow`, so that
/// sum(counts) + overflow == n_samples.
struct SpacingHistogram {
  std::vector<double> bin_edges;
  std::vector<std::int64_t> counts;
  std::int64_t overflow = 0;
  std::int64_t n_samples = 0;
  double mean_raw_spacing = 0.0;
  std::vector<double> normalized;  // the spacings themselves, in level order

  /// Fraction of normalized spacings strictly above y.
  double tail_fraction(double y) const;
  /// density of bin i: counts[i] / (n_samples * width)
  double density(std::size_t i) const;
};

/// Raw consecutive differences of sorted levels.
std::vector<double> raw_spacings(std::span<const double> sorted_levels);

SpacingHistogram spacing_histogram(std::span<const double> sorted_levels,
                                   const SpacingBins& bins = {});

SpacingHistogram spacing_distribution(const spectrum::Spectrum& spectrum,
                                      const SpacingBins& bins = {});

/// #{n : lambda_{n+1} - lambda_n > y} on raw (unnormalised) spacings.
std::int64_t raw_tail_count(std::span<const double> sorted_levels, double y);

/// max over y of raw_tail_count / (N^(3/4)/y + sqrt(N)), N = number of levels.
double tail_bound_constant(std::span<const double> sorted_levels, std::span<const double> ys);

/// CSV emitters.
void write_gap_table_csv(std::ostream& out, const spectrum::Cluster& cluster);
void write_histogram_csv(std::ostream& out, const SpacingHistogram& h);

}  // namespace hemirobin::stats

#endif  // HEMIROBIN_STATS_HPP_
