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

#include "hemirobin/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hemirobin/cap.hpp"
#include "hemirobin/secular.hpp"
#include "hemirobin/specfun.hpp"
#include "hemirobin/spectrum.hpp"
#include "hemirobin/spectrum_io.hpp"
#include "hemirobin/stats.hpp"

namespace hemirobin::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Adaptive Simpson on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 18);
}

// 1. Neumann reference list, read back from the CSV table.
Verdict neumann_reference(unsigned) {
  const auto t0 = Clock::now();
  std::stringstream csv;
  io::write_spectrum_csv(csv, spectrum::build_spectrum(0.0, 3, 1));
  const auto back = io::read_spectrum_csv(csv);
  const double secs = seconds_since(t0);
  const std::vector<double> want{0, 2, 6, 6, 12, 12};
  const auto got = back.lambdas();
  std::string list;
  for (double v : got) {
    list += (list.empty() ? "" : ",") + io::format_real(v);
  }
  return {got == want && secs < 1.0, "lambda = [" + list + "], " + fmt("%.3f s", secs)};
}

// 2. Every root inside (ell, ell+1) and under the delta bound.
Verdict root_localization(unsigned threads) {
  const auto t0 = Clock::now();
  long long checked = 0;
  long long violations = 0;
  for (double sigma : {0.01, 1.0, 100.0}) {
    const auto s = spectrum::build_spectrum(sigma, 300, threads);
    for (const auto& e : s.eigenvalues) {
      ++checked;
      const bool inside = e.nu > e.ell && e.nu < e.ell + 1 && e.delta > 0.0 && e.delta < 1.0;
      const bool bound = e.delta < secular::delta_upper_bound(sigma, e.nu);
      violations += (inside && bound) ? 0 : 1;
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && secs < 60.0,
          std::to_string(checked) + " roots, " + std::to_string(violations) + " violations, " +
              fmt("%.2f s", secs)};
}

// 3. Boundary condition sigma P(0) - P'(0) = 0 on random roots.
Verdict boundary_cross_oracle(unsigned) {
  std::mt19937_64 rng(20260303);
  std::uniform_int_distribution<int> ell_dist(0, 300);
  std::uniform_real_distribution<double> log_sigma(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const int ell = ell_dist(rng);
    std::uniform_int_distribution<int> k_dist(0, ell / 2);
    const int m = ell - 2 * k_dist(rng);
    const double sigma = std::pow(10.0, log_sigma(rng));
    const auto root = secular::solve_nu(ell, m, sigma);
    const auto p = specfun::legendre_P_at0_scaled(root.nu, m);
    const double rel = std::fabs(sigma * p.value - p.derivative) / (sigma * std::fabs(p.value));
    worst = std::max(worst, rel);
  }
  return {worst <= 1e-8, "500 roots, max relative residual " + fmt("%.3g", worst)};
}

// 4. Simple spectrum and nu increasing in m inside each cluster.
Verdict simplicity(unsigned threads) {
  const auto s = spectrum::build_spectrum(1.0, 300, threads);
  long long ties = 0;
  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i) {
    ties += s.eigenvalues[i].lambda > s.eigenvalues[i - 1].lambda ? 0 : 1;
  }
  long long order = 0;
  for (int ell = 0; ell <= 300; ++ell) {
    const auto c = spectrum::robin_cluster(ell, 1.0, threads);
    for (std::size_t i = 1; i < c.entries.size(); ++i) {
      order += (c.entries[i].m == c.entries[i - 1].m + 2 && c.entries[i].nu > c.entries[i - 1].nu)
                   ? 0
                   : 1;
    }
  }
  return {ties == 0 && order == 0, std::to_string(s.eigenvalues.size()) + " eigenvalues, " +
                                       std::to_string(ties) + " non-increasing steps, " +
                                       std::to_string(order) + " m-order violations"};
}

// 5. The ell = 150 cluster of RN gaps.
Verdict cluster_150(unsigned threads) {
  constexpr int kEll = 150;
  const auto c = spectrum::robin_cluster(kEll, 1.0, threads);
  const double mean = stats::cluster_gap_mean(c);
  double worst_scaled = 0.0;  // max (ell - m) * relative deviation
  for (const auto& e : c.entries) {
    if (e.m > kEll - 10) {
      continue;
    }
    const double pred = spectrum::gap_asymptotic(kEll, e.m, 1.0);
    worst_scaled = std::max(worst_scaled, std::fabs(e.rn_gap - pred) / pred * (kEll - e.m));
  }
  return {mean >= 1.8 && mean <= 2.2 && worst_scaled <= 3.0,
          "mean " + fmt("%.6f", mean) + ", max (ell-m)*reldev " + fmt("%.4f", worst_scaled) +
              " (limit 3)"};
}

// 6. Cluster means approach 2 sigma.
Verdict mean_convergence(unsigned threads) {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (int ell : {400, 1600, 6400}) {
    const double mean = stats::cluster_gap_mean(spectrum::robin_cluster(ell, 1.0, threads));
    const double err = std::fabs(mean - 2.0);
    ok = ok && err <= 15.0 / std::sqrt(ell);
    detail += "ell=" + std::to_string(ell) + " |mean-2|=" + fmt("%.3g", err) + "; ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 300.0, detail + fmt("%.2f s", secs)};
}

// 7. Szego limit law of within-cluster gaps.
Verdict szego_law(unsigned threads) {
  // closed-form CDF against quadrature of the density, after y = a / cos t
  // removes the endpoint singularity
  const double sigma = 1.0;
  const double a = 4.0 * sigma / std::numbers::pi;
  double cdf_err = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double y = a * (1.0 + 0.1 * i);
    const double t_hi = std::acos(a / y);
    auto integrand = [&](double t) {
      const double yy = a / std::cos(t);
      const double dy = a * std::sin(t) / (std::cos(t) * std::cos(t));
      return t == 0.0 ? 1.0 : stats::szego_density(yy, sigma) * dy;  // 1 is the t -> 0 limit
    };
    const double q = integrate(integrand, 0.0, t_hi, 1e-12);
    cdf_err = std::max(cdf_err, std::fabs(q - stats::szego_cdf(y, sigma)));
  }
  std::vector<double> ks;
  std::string detail;
  for (int ell : {100, 400, 1600, 6400}) {
    ks.push_back(stats::szego_ks_distance(
        stats::gap_sample(spectrum::robin_cluster(ell, sigma, threads))));
    detail += "KS(" + std::to_string(ell) + ")=" + fmt("%.5f", ks.back()) + " ";
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < ks.size(); ++i) {
    decreasing = decreasing && ks[i] < ks[i - 1];
  }
  return {decreasing && ks.back() < 0.03 && cdf_err <= 1e-8,
          detail + "; CDF vs quadrature " + fmt("%.2g", cdf_err)};
}

// 8. lambda^(1/4) gap-bound constants.
Verdict gap_bounds(unsigned threads) {
  const auto robin = spectrum::build_spectrum(1.0, 500, threads);
  const auto neumann = spectrum::build_spectrum(0.0, 500, threads);
  const auto g = stats::gap_bound_constants(robin, neumann);
  const double target = 2.0 / std::sqrt(std::numbers::pi);
  const double rel = std::fabs(g.top_ratio_at_ell_max - target) / target;
  bool increasing = true;
  for (std::size_t i = 1; i < g.top_gaps.size(); ++i) {
    increasing = increasing && g.top_gaps[i] > g.top_gaps[i - 1];
  }
  return {rel <= 0.05 && std::isfinite(g.upper) && increasing,
          "ratio at ell=500 " + fmt("%.5f", g.top_ratio_at_ell_max) + " (" +
              fmt("%.2f%%", 100 * rel) + " from 2/sqrt(pi)), C_emp " + fmt("%.5f", g.upper) +
              ", c_emp " + fmt("%.5f", g.lower) + ", d_{l,l} increasing: " +
              (increasing ? "yes" : "no")};
}

// 9. Large normalised spacings become rare.
Verdict spacing_tail(unsigned threads) {
  std::vector<double> tails;
  std::string detail;
  for (int ell_max : {100, 200, 400}) {
    const auto h = stats::spacing_distribution(spectrum::build_spectrum(1.0, ell_max, threads));
    tails.push_back(h.tail_fraction(0.5));
    detail += "tail(" + std::to_string(ell_max) + ")=" + fmt("%.5f", tails.back()) + " ";
  }
  return {tails[1] < tails[0] && tails[2] < tails[1] && tails[2] < 0.1, detail};
}

cap::CapProblem pi_over_3_dirichlet() {
  return {std::numbers::pi / 3.0, cap::BoundaryCondition::dirichlet(), 100.0};
}

// 10. Golden count for the pi/3 Dirichlet cap.
Verdict golden_count(unsigned threads) {
  const auto t0 = Clock::now();
  const auto s = cap::cap_spectrum(pi_over_3_dirichlet(), threads);
  const double secs = seconds_since(t0);
  double worst = 0.0;
  for (const auto& e : s.eigenvalues) {
    worst = std::max(worst, std::fabs(e.residual));
  }
  return {s.eigenvalues.size() == 1258 && secs < 120.0,
          std::to_string(s.eigenvalues.size()) + " eigenvalues, max |residual| " +
              fmt("%.2g", worst) + ", " + fmt("%.2f s", secs)};
}

// 11. Hemisphere cap with Robin condition against the secular solver.
Verdict cap_hemisphere(unsigned threads) {
  const cap::CapProblem p{std::numbers::pi / 2.0, cap::BoundaryCondition::robin(1.0), 21.0};
  const auto c = cap::cap_spectrum(p, threads);
  const auto s = spectrum::build_spectrum(1.0, 20, threads);
  if (c.eigenvalues.size() != s.eigenvalues.size()) {
    return {false, "count " + std::to_string(c.eigenvalues.size()) + " vs " +
                       std::to_string(s.eigenvalues.size())};
  }
  double worst = 0.0;
  bool same_m = true;
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    const double ref = s.eigenvalues[i].lambda;
    worst = std::max(worst, std::fabs(c.eigenvalues[i].lambda - ref) / ref);
    same_m = same_m && c.eigenvalues[i].m == s.eigenvalues[i].m;
  }
  return {worst <= 1e-8 && same_m, std::to_string(s.eigenvalues.size()) +
                                       " eigenvalues, max relative difference " +
                                       fmt("%.3g", worst)};
}

// 12. Poisson report for the pi/3 cap, compared with the degenerate
// hemisphere.
Verdict cap_poisson(unsigned threads) {
  const auto r = cap::cap_spacing_report(cap::cap_spectrum(pi_over_3_dirichlet(), threads));
  const cap::CapProblem hemi{std::numbers::pi / 2.0, cap::BoundaryCondition::dirichlet(), 100.0};
  const auto d = cap::cap_spacing_report(cap::cap_spectrum(hemi, threads));
  std::int64_t binned = r.histogram.overflow;
  for (auto c : r.histogram.counts) {
    binned += c;
  }
  const bool produced = !r.histogram.counts.empty() && binned == r.histogram.n_samples;
  return {produced && 5.0 * r.ks_poisson <= d.ks_poisson,
          "KS(pi/3)=" + fmt("%.5f", r.ks_poisson) + ", KS(pi/2)=" + fmt("%.5f", d.ks_poisson) +
              ", " + std::to_string(r.histogram.n_samples) + " spacings"};
}

struct Entry {
  const char* name;
  Verdict (*fn)(unsigned);
};

constexpr Entry kEntries[kCriterionCount] = {
    {"neumann-reference", neumann_reference},
    {"root-localization-delta-bound", root_localization},
    {"boundary-condition-cross-oracle", boundary_cross_oracle},
    {"simplicity-m-monotonicity", simplicity},
    {"cluster-150-gaps", cluster_150},
    {"cluster-mean-convergence", mean_convergence},
    {"szego-law", szego_law},
    {"gap-bound-constants", gap_bounds},
    {"spacing-delta-at-zero", spacing_tail},
    {"cap-golden-count", golden_count},
    {"cap-hemisphere-consistency", cap_hemisphere},
    {"cap-poisson-report", cap_poisson},
};

}  // namespace

CriterionResult run_criterion(int id, unsigned threads) {
  CriterionResult r;
  r.id = id;
  if (id < 1 || id > kCriterionCount) {
    r.name = "unknown";
    r.detail = "no such criterion";
    return r;
  }
  const auto& e = kEntries[id - 1];
  r.name = e.name;
  const auto t0 = Clock::now();
  try {
    const auto v = e.fn(threads);
    r.passed = v.passed;
    r.detail = v.detail;
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = std::string("exception: ") + ex.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<CriterionResult> run_acceptance(std::ostream& out, unsigned threads) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= kCriterionCount; ++id) {
    results.push_back(run_criterion(id, threads));
    out << format_result(results.back()) << '\n' << std::flush;
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "%s [%2d] %s (%.2f s): ", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
  return head + r.detail;
}

}  // namespace hemirobin::acceptance
