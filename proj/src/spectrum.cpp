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

#include "hemirobin/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "hemirobin/errors.hpp"
#include "hemirobin/parallel.hpp"
#include "hemirobin/secular.hpp"

namespace hemirobin::spectrum {
namespace {

EigenvalueRecord make_record(const secular::RobinRoot& root) {
  EigenvalueRecord r;
  r.ell = root.ell;
  r.m = root.m;
  r.sigma = root.sigma;
  r.nu = root.nu;
  r.delta = root.delta;
  r.rn_gap = rn_gap_exact(r);
  // ell(ell+1) + gap keeps the small shift at full relative precision.
  r.lambda = static_cast<double>(root.ell) * (root.ell + 1.0) + r.rn_gap;
  return r;
}

bool record_less(const EigenvalueRecord& a, const EigenvalueRecord& b) {
  return std::tie(a.lambda, a.ell, a.m) < std::tie(b.lambda, b.ell, b.m);
}

void check_ell(int ell) {
  if (ell < 0) {
    throw DomainError("cluster index ell must be >= 0, got " + std::to_string(ell));
  }
}

}  // namespace

std::vector<double> Spectrum::lambdas() const {
  std::vector<double> out;
  out.reserve(eigenvalues.size());
  for (const auto& e : eigenvalues) {
    out.push_back(e.lambda);
  }
  return out;
}

int cluster_size(int ell) {
  check_ell(ell);
  return ell / 2 + 1;
}

std::int64_t cluster_start_index(int ell) {
  check_ell(ell);
  if (ell == 0) {
    return 0;
  }
  // sum_{j<ell} floor(j/2) = floor((ell-1)^2/4)
  const std::int64_t e = ell;
  return (e - 1) * (e - 1) / 4 + e;
}

Cluster neumann_cluster(int ell) {
  check_ell(ell);
  Cluster c;
  c.ell = ell;
  c.sigma = 0.0;
  c.start_index = cluster_start_index(ell);
  const double level = static_cast<double>(ell) * (ell + 1.0);
  for (int m = ell % 2; m <= ell; m += 2) {
    EigenvalueRecord r;
    r.ell = ell;
    r.m = m;
    r.nu = ell;
    r.lambda = level;
    c.entries.push_back(r);
  }
  return c;
}

Cluster robin_cluster(int ell, double sigma, unsigned threads) {
  check_ell(ell);
  if (!(sigma > 0.0)) {
    throw DomainError("robin_cluster: sigma must be > 0");
  }
  Cluster c;
  c.ell = ell;
  c.sigma = sigma;
  c.start_index = cluster_start_index(ell);
  c.entries.resize(static_cast<std::size_t>(cluster_size(ell)));
  const int m0 = ell % 2;
  parallel_for(c.entries.size(), threads, [&](std::size_t i) {
    c.entries[i] = make_record(secular::solve_nu(ell, m0 + 2 * static_cast<int>(i), sigma));
  });
  std::sort(c.entries.begin(), c.entries.end(), record_less);
  return c;
}

Spectrum build_spectrum(double sigma, int ell_max, unsigned threads) {
  if (ell_max < 0) {
    throw DomainError("build_spectrum: ell_max must be >= 0");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw DomainError("build_spectrum: sigma must be finite and >= 0");
  }
  std::vector<Cluster> clusters(static_cast<std::size_t>(ell_max) + 1);
  if (sigma == 0.0) {
    for (int ell = 0; ell <= ell_max; ++ell) {
      clusters[static_cast<std::size_t>(ell)] = neumann_cluster(ell);
    }
  } else {
    parallel_for(clusters.size(), threads, [&](std::size_t ell) {
      clusters[ell] = robin_cluster(static_cast<int>(ell), sigma, 1);
    });
  }
  Spectrum s;
  s.sigma = sigma;
  s.ell_max = ell_max;
  s.eigenvalues.reserve(static_cast<std::size_t>(cluster_start_index(ell_max + 1)));
  for (auto& c : clusters) {
    s.eigenvalues.insert(s.eigenvalues.end(), c.entries.begin(), c.entries.end());
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), record_less);
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    s.eigenvalues[i].n = static_cast<std::int64_t>(i);
  }
  return s;
}

double rn_gap_exact(const EigenvalueRecord& record) {
  return record.delta * (2.0 * record.ell + 1.0 + record.delta);
}

double gap_asymptotic(int ell, int m, double sigma) {
  secular::check_cluster_order(ell, m);
  if (ell < 1) {
    throw DomainError("gap_asymptotic: needs ell >= 1");
  }
  if (m == ell) {
    return 2.0 * sigma / std::sqrt(std::numbers::pi) * std::sqrt(static_cast<double>(ell));
  }
  const double root = std::sqrt(static_cast<double>(ell - m) * (ell + m));
  return 2.0 * sigma / std::numbers::pi * (2.0 * ell + 1.0) / root;
}

double delta_asymptotic(int ell, int m, double sigma) {
  secular::check_cluster_order(ell, m);
  if (ell < 1) {
    throw DomainError("delta_asymptotic: needs ell >= 1");
  }
  if (m == ell) {
    return sigma / std::sqrt(std::numbers::pi * ell);
  }
  const double root = std::sqrt(static_cast<double>(ell - m) * (ell + m));
  return 2.0 * sigma / (std::numbers::pi * root);
}

}  // namespace hemirobin::spectrum
