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

#include "hemirobin/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "hemirobin/errors.hpp"
#include "hemirobin/spectrum_io.hpp"

namespace hemirobin::stats {
namespace {

constexpr double kPi = std::numbers::pi;

void check_sigma(double sigma) {
  if (!(sigma > 0.0)) {
    throw DomainError("Robin parameter sigma must be > 0");
  }
}

}  // namespace

GapSample gap_sample(const spectrum::Cluster& cluster) {
  GapSample s;
  s.ell = cluster.ell;
  s.sigma = cluster.sigma;
  std::vector<const spectrum::EigenvalueRecord*> rows;
  for (const auto& e : cluster.entries) {
    if (e.m < cluster.ell) {
      rows.push_back(&e);
    }
  }
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->m < b->m; });
  for (const auto* r : rows) {
    s.gaps.push_back(r->rn_gap);
  }
  return s;
}

double szego_cdf(double y, double sigma) {
  check_sigma(sigma);
  const double edge = 4.0 * sigma / kPi;
  if (!(y > edge)) {
    return 0.0;
  }
  const double r = edge / y;
  return std::sqrt((1.0 - r) * (1.0 + r));
}

double szego_density(double y, double sigma) {
  check_sigma(sigma);
  const double edge = 4.0 * sigma / kPi;
  if (!(y > edge)) {
    return 0.0;
  }
  const double r = edge / y;
  return 16.0 * sigma * sigma / (kPi * kPi * y * y * y * std::sqrt((1.0 - r) * (1.0 + r)));
}

double cluster_gap_mean(const spectrum::Cluster& cluster) {
  if (cluster.entries.empty()) {
    throw SampleError("cluster_gap_mean: empty cluster");
  }
  double sum = 0.0;
  for (const auto& e : cluster.entries) {
    sum += e.rn_gap;
  }
  return sum / static_cast<double>(cluster.entries.size());
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) {
    throw SampleError("ks_distance: empty sample");
  }
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

double szego_ks_distance(const GapSample& sample) {
  check_sigma(sample.sigma);
  if (sample.ell < 50) {
    throw SampleError("szego_ks_distance: needs ell >= 50, got " + std::to_string(sample.ell));
  }
  if (static_cast<int>(sample.gaps.size()) != sample.ell / 2) {
    throw SampleError("szego_ks_distance: cluster is incomplete");
  }
  const double sigma = sample.sigma;
  return ks_distance(sample.gaps, [sigma](double y) { return szego_cdf(y, sigma); });
}

GapBoundConstants gap_bound_constants(const spectrum::Spectrum& robin,
                                      const spectrum::Spectrum& neumann) {
  check_sigma(robin.sigma);
  if (neumann.sigma != 0.0 || robin.ell_max != neumann.ell_max ||
      robin.eigenvalues.size() != neumann.eigenvalues.size()) {
    throw DomainError("gap_bound_constants: spectra do not match");
  }
  if (robin.ell_max < 10) {
    throw SampleError("gap_bound_constants: needs ell_max >= 10");
  }
  const double sigma = robin.sigma;
  GapBoundConstants out;
  for (std::size_t n = 1; n < robin.eigenvalues.size(); ++n) {
    const double base = neumann.eigenvalues[n].lambda;
    const double d = robin.eigenvalues[n].lambda - base;
    const double ratio = d / (std::pow(base, 0.25) * sigma);
    if (ratio > out.upper) {
      out.upper = ratio;
      out.upper_argmax = static_cast<std::int64_t>(n);
    }
  }
  out.top_gaps.assign(static_cast<std::size_t>(robin.ell_max) + 1, 0.0);
  for (const auto& e : robin.eigenvalues) {
    if (e.m != e.ell) {
      continue;
    }
    out.top_gaps[static_cast<std::size_t>(e.ell)] = e.rn_gap;
    if (e.ell == 0) {
      continue;
    }
    const double ratio =
        e.rn_gap / (std::pow(static_cast<double>(e.ell) * (e.ell + 1.0), 0.25) * sigma);
    if (ratio > out.lower) {
      out.lower = ratio;
      out.lower_argmax_ell = e.ell;
    }
    if (e.ell == robin.ell_max) {
      out.top_ratio_at_ell_max = ratio;
    }
  }
  return out;
}

double SpacingHistogram::tail_fraction(double y) const {
  if (normalized.empty()) {
    return 0.0;
  }
  const auto above = std::count_if(normalized.begin(), normalized.end(),
                                   [y](double s) { return s > y; });
  return static_cast<double>(above) / static_cast<double>(normalized.size());
}

double SpacingHistogram::density(std::size_t i) const {
  const double width = bin_edges[i + 1] - bin_edges[i];
  return static_cast<double>(counts[i]) / (static_cast<double>(n_samples) * width);
}

std::vector<double> raw_spacings(std::span<const double> sorted_levels) {
  if (sorted_levels.size() < 2) {
    throw SampleError("spacings need at least 2 levels");
  }
  std::vector<double> out(sorted_levels.size() - 1);
  for (std::size_t i = 0; i + 1 < sorted_levels.size(); ++i) {
    out[i] = sorted_levels[i + 1] - sorted_levels[i];
    if (out[i] < 0.0) {
      throw DomainError("spacings: levels are not sorted");
    }
  }
  return out;
}

SpacingHistogram spacing_histogram(std::span<const double> sorted_levels,
                                   const SpacingBins& bins) {
  if (bins.count < 1 || !(bins.hi > bins.lo)) {
    throw DomainError("spacing histogram: bad bin specification");
  }
  SpacingHistogram h;
  h.normalized = raw_spacings(sorted_levels);
  double sum = 0.0;
  for (double s : h.normalized) {
    sum += s;
  }
  h.mean_raw_spacing = sum / static_cast<double>(h.normalized.size());
  if (!(h.mean_raw_spacing > 0.0)) {
    throw SampleError("spacing histogram: all levels coincide");
  }
  for (double& s : h.normalized) {
    s /= h.mean_raw_spacing;
  }
  h.n_samples = static_cast<std::int64_t>(h.normalized.size());
  const double width = (bins.hi - bins.lo) / bins.count;
  h.bin_edges.resize(static_cast<std::size_t>(bins.count) + 1);
  for (int i = 0; i <= bins.count; ++i) {
    h.bin_edges[static_cast<std::size_t>(i)] = bins.lo + width * i;
  }
  h.counts.assign(static_cast<std::size_t>(bins.count), 0);
  for (double s : h.normalized) {
    if (s >= bins.hi) {
      ++h.overflow;
      continue;
    }
    // spacings are >= 0; anything under lo lands in the first bin
    auto idx = static_cast<long long>(std::floor((s - bins.lo) / width));
    idx = std::clamp<long long>(idx, 0, bins.count - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  return h;
}

SpacingHistogram spacing_distribution(const spectrum::Spectrum& spectrum,
                                      const SpacingBins& bins) {
  const auto levels = spectrum.lambdas();
  return spacing_histogram(levels, bins);
}

std::int64_t raw_tail_count(std::span<const double> sorted_levels, double y) {
  const auto raw = raw_spacings(sorted_levels);
  return std::count_if(raw.begin(), raw.end(), [y](double s) { return s > y; });
}

double tail_bound_constant(std::span<const double> sorted_levels, std::span<const double> ys) {
  const double n = static_cast<double>(sorted_levels.size());
  double worst = 0.0;
  for (double y : ys) {
    if (!(y > 0.0)) {
      throw DomainError("tail_bound_constant: thresholds must be > 0");
    }
    const double count = static_cast<double>(raw_tail_count(sorted_levels, y));
    worst = std::max(worst, count / (std::pow(n, 0.75) / y + std::sqrt(n)));
  }
  return worst;
}

void write_gap_table_csv(std::ostream& out, const spectrum::Cluster& cluster) {
  out << "ell,m,gap_exact,gap_asymptotic\n";
  std::vector<const spectrum::EigenvalueRecord*> rows;
  for (const auto& e : cluster.entries) {
    rows.push_back(&e);
  }
  std::sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->m < b->m; });
  for (const auto* e : rows) {
    const double predicted =
        (cluster.sigma > 0.0 && cluster.ell >= 1)
            ? spectrum::gap_asymptotic(cluster.ell, e->m, cluster.sigma)
            : 0.0;
    out << e->ell << ',' << e->m << ',' << io::format_real(e->rn_gap) << ','
        << io::format_real(predicted) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const SpacingHistogram& h) {
  out << "bin_left,bin_right,count,density\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << io::format_real(h.bin_edges[i]) << ',' << io::format_real(h.bin_edges[i + 1])
        << ',' << h.counts[i] << ',' << io::format_real(h.density(i)) << '\n';
  }
}

}  // namespace hemirobin::stats
