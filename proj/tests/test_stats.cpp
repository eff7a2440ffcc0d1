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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "hemirobin/errors.hpp"
#include "hemirobin/spectrum.hpp"
#include "hemirobin/stats.hpp"
#include "oracles.hpp"

using namespace hemirobin;
using namespace hemirobin::stats;
using doctest::Approx;

// max over y of raw_tail_count / (N^{3/4}/y + sqrt N) for sigma = 1 was
// 1.32, 1.42, 1.47, 1.51 at ell_max = 100, 200, 300, 400; frozen with margin
constexpr double kTailA = 2.0;

namespace {

// CDF of the limit law by quadrature of its density; y = a / cos t removes
// the endpoint singularity.
double szego_cdf_quadrature(double y, double sigma) {
  const double a = 4 * sigma / std::numbers::pi;
  if (y <= a) {
    return 0.0;
  }
  auto f = [&](double t) {
    if (t == 0.0) {
      return 1.0;  // limit of density * dy/dt
    }
    const double c = std::cos(t);
    return szego_density(a / c, sigma) * a * std::sin(t) / (c * c);
  };
  return oracle::integrate(f, 0.0, std::acos(a / y), 1e-12);
}

}  // namespace

TEST_CASE("szego_cdf examples and quadrature of the density") {
  const double sigma = 1.0;
  const double a = 4 / std::numbers::pi;
  CHECK(szego_cdf(a, sigma) == 0.0);
  CHECK(szego_cdf(0.5 * a, sigma) == 0.0);
  CHECK(szego_cdf(1e12, sigma) == Approx(1.0));
  CHECK(szego_cdf(2 * a, sigma) == Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
  CHECK(szego_cdf_quadrature(2 * a, sigma) == Approx(std::sqrt(3.0) / 2).epsilon(1e-9));
  for (double s : {0.3, 1.0, 4.0}) {
    for (int i = 1; i <= 100; ++i) {
      const double y = 4 * s / std::numbers::pi * (1.0 + 0.07 * i);
      CHECK(std::fabs(szego_cdf(y, s) - szego_cdf_quadrature(y, s)) <= 1e-8);
    }
  }
  CHECK_THROWS_AS(szego_cdf(1.0, 0.0), DomainError);
}

TEST_CASE("szego_cdf is a distribution function") {
  double prev = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const double y = 0.01 * i;
    const double c = szego_cdf(y, 1.0);
    CHECK(c >= prev);
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    prev = c;
  }
  // right-continuity at the support endpoint
  const double a = 4 / std::numbers::pi;
  CHECK(szego_cdf(a * (1 + 1e-12), 1.0) < 1e-5);
}

TEST_CASE("ks_distance basics") {
  // uniform sample against the uniform CDF: the sup is 1/n at the top
  std::vector<double> u;
  for (int i = 1; i <= 10; ++i) {
    u.push_back(i / 10.0);
  }
  CHECK(ks_distance(u, [](double x) { return std::clamp(x, 0.0, 1.0); }) == Approx(0.1));
  CHECK(ks_distance({0.5}, [](double x) { return std::clamp(x, 0.0, 1.0); }) == Approx(0.5));
  CHECK(ks_distance({0.9, 0.1}, [](double x) { return std::clamp(x, 0.0, 1.0); }) == Approx(0.4));
  CHECK_THROWS_AS(ks_distance({}, [](double) { return 0.0; }), SampleError);
}

TEST_CASE("cluster_gap_mean examples") {
  CHECK(cluster_gap_mean(spectrum::robin_cluster(150, 1.0, 0)) == Approx(2.0).epsilon(0.1));
  const double m4 = cluster_gap_mean(spectrum::robin_cluster(10000, 1.0, 0));
  CHECK(std::fabs(m4 - 2.0) <= 10.0 / std::sqrt(10000.0));
  CHECK(std::fabs(cluster_gap_mean(spectrum::robin_cluster(1000, 3.0, 0)) - 6.0) <= 0.5);
  CHECK_THROWS_AS(cluster_gap_mean(spectrum::Cluster{}), SampleError);
}

TEST_CASE("cluster means scale with sigma within the O(ell^{-1/2}) band") {
  for (int ell : {2000, 6400}) {
    for (double sigma : {0.1, 1.0, 10.0}) {
      const double r = cluster_gap_mean(spectrum::robin_cluster(ell, sigma, 0)) / sigma;
      CHECK(std::fabs(r - 2.0) <= 15.0 / std::sqrt(ell));
    }
  }
}

TEST_CASE("gap_sample excludes m = ell and orders by m") {
  const auto c = spectrum::robin_cluster(150, 1.0);
  const auto g = gap_sample(c);
  CHECK(g.ell == 150);
  CHECK(g.gaps.size() == 75);
  for (std::size_t i = 0; i < g.gaps.size(); ++i) {
    CHECK(g.gaps[i] > 0.0);
    if (i > 0) {
      // gaps grow with m like 1/sqrt(ell^2 - m^2)
      CHECK(g.gaps[i] > g.gaps[i - 1]);
    }
  }
}

TEST_CASE("KS distance to the limit law") {
  const double k150 = szego_ks_distance(gap_sample(spectrum::robin_cluster(150, 1.0, 0)));
  const double k5000 = szego_ks_distance(gap_sample(spectrum::robin_cluster(5000, 1.0, 0)));
  CHECK(k150 < 0.15);
  CHECK(k5000 < 0.03);
  CHECK(k5000 < k150);
  double prev = 1.0;
  for (int ell : {100, 400, 1600, 6400}) {
    const double k = szego_ks_distance(gap_sample(spectrum::robin_cluster(ell, 1.0, 0)));
    CHECK(k < prev);
    prev = k;
  }
  CHECK_THROWS_AS(szego_ks_distance(gap_sample(spectrum::robin_cluster(20, 1.0))), SampleError);
  auto partial = gap_sample(spectrum::robin_cluster(60, 1.0));
  partial.gaps.pop_back();
  CHECK_THROWS_AS(szego_ks_distance(partial), SampleError);
}

TEST_CASE("gap ratio at 2 sigma approaches 2") {
  for (int ell : {500, 1000}) {
    const auto a = spectrum::robin_cluster(ell, 1.0, 0);
    const auto b = spectrum::robin_cluster(ell, 2.0, 0);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      const int m = a.entries[i].m;
      if (m == ell) {
        continue;
      }
      CHECK(std::fabs(b.entries[i].rn_gap / a.entries[i].rn_gap - 2.0) <= 10.0 / (ell - m));
    }
  }
}

TEST_CASE("gap-bound constants") {
  const auto robin = spectrum::build_spectrum(1.0, 500);
  const auto neumann = spectrum::build_spectrum(0.0, 500);
  const auto g = gap_bound_constants(robin, neumann);
  CHECK(g.top_ratio_at_ell_max == Approx(2 / std::sqrt(std::numbers::pi)).epsilon(0.05));
  CHECK(std::isfinite(g.upper));
  CHECK(g.upper >= g.lower);
  CHECK(g.lower >= g.top_ratio_at_ell_max);
  REQUIRE(g.top_gaps.size() == 501);
  CHECK(g.top_gaps[500] > g.top_gaps[100]);
  CHECK_THROWS_AS(gap_bound_constants(robin, spectrum::build_spectrum(0.0, 400)), DomainError);
  CHECK_THROWS_AS(
      gap_bound_constants(spectrum::build_spectrum(1.0, 5), spectrum::build_spectrum(0.0, 5)),
      SampleError);
}

TEST_CASE("spacing histogram invariants") {
  const auto s = spectrum::build_spectrum(1.0, 150);
  const auto h = spacing_distribution(s);
  CHECK(h.bin_edges.size() == 101);
  CHECK(h.counts.size() == 100);
  CHECK(h.n_samples == static_cast<std::int64_t>(s.eigenvalues.size()) - 1);
  CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::int64_t{0}) + h.overflow ==
        h.n_samples);
  const double mean =
      std::accumulate(h.normalized.begin(), h.normalized.end(), 0.0) / h.normalized.size();
  CHECK(std::fabs(mean - 1.0) <= 1e-9);
  double mass = 0.0;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    mass += h.density(i) * (h.bin_edges[i + 1] - h.bin_edges[i]);
  }
  CHECK(mass + double(h.overflow) / h.n_samples == Approx(1.0));
  std::ostringstream csv;
  write_histogram_csv(csv, h);
  CHECK(csv.str().rfind("bin_left,bin_right,count,density\n", 0) == 0);
}

TEST_CASE("Neumann spacings pile up at zero") {
  const auto h = spacing_distribution(spectrum::build_spectrum(0.0, 100));
  CHECK(double(h.counts[0]) / h.n_samples >= 0.49);
}

TEST_CASE("tail of normalised spacings shrinks with ell_max") {
  double prev = 1.0;
  for (int ell_max : {100, 200, 300}) {
    const double t = spacing_distribution(spectrum::build_spectrum(1.0, ell_max)).tail_fraction(0.5);
    CHECK(t < prev);
    CHECK(t < 0.1);
    prev = t;
  }
}

TEST_CASE("raw tail count obeys the N^{3/4}/y + sqrt N bound with a frozen constant") {
  std::vector<double> ys;
  for (double y = 1.0; y <= 400.0; y *= 1.5) {
    ys.push_back(y);
  }
  for (int ell_max : {100, 200, 400}) {
    const auto lv = spectrum::build_spectrum(1.0, ell_max).lambdas();
    const double n = static_cast<double>(lv.size());
    for (double y : ys) {
      CHECK(raw_tail_count(lv, y) <= kTailA * (std::pow(n, 0.75) / y + std::sqrt(n)));
    }
    CHECK(tail_bound_constant(lv, ys) <= kTailA);
  }
}

TEST_CASE("spacing errors") {
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(spacing_histogram(one), SampleError);
  const std::vector<double> flat{2.0, 2.0, 2.0};
  CHECK_THROWS_AS(spacing_histogram(flat), SampleError);
  const std::vector<double> unsorted{3.0, 1.0, 2.0};
  CHECK_THROWS_AS(spacing_histogram(unsorted), DomainError);
  const std::vector<double> ok{0.0, 1.0, 3.0};
  CHECK_THROWS_AS(spacing_histogram(ok, {1.0, 0.5, 10}), DomainError);
  CHECK_THROWS_AS(spacing_histogram(ok, {0.0, 5.0, 0}), DomainError);
}

TEST_CASE("gap table CSV") {
  std::ostringstream out;
  write_gap_table_csv(out, spectrum::robin_cluster(150, 1.0));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "ell,m,gap_exact,gap_asymptotic");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
  }
  CHECK(rows == 76);
}
