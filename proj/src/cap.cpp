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

#include "hemirobin/cap.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <tuple>

#include "hemirobin/errors.hpp"
#include "hemirobin/parallel.hpp"
#include "hemirobin/specfun.hpp"
#include "hemirobin/spectrum_io.hpp"

namespace hemirobin::cap {
namespace {

constexpr double kGridStep = 0.05;
constexpr int kRefineSubdivisions = 8;
constexpr int kEmptySectorsToStop = 3;
constexpr std::size_t kMinSpacingSample = 500;

// Brent's method on [a, b] with f(a) f(b) < 0.
template <class F>
double brent_root(F&& f, double a, double b, double fa, double fb) {
  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int it = 0; it < 200; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * 2.2e-16 * std::fabs(b) + 1e-15;
    const double half = 0.5 * (c - b);
    if (std::fabs(half) <= tol || fb == 0.0) {
      return b;
    }
    if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
      // secant or inverse quadratic interpolation
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * half * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      }
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * half * q - std::fabs(tol * q), std::fabs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = half;
        e = d;
      }
    } else {
      d = half;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::fabs(d) > tol ? d : (half > 0.0 ? tol : -tol);
    fb = f(b);
  }
  throw ConvergenceError("cap: root refinement did not converge");
}

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

}  // namespace

std::string to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::kDirichlet: return "dirichlet";
    case BoundaryKind::kNeumann: return "neumann";
    case BoundaryKind::kRobin: return "robin";
  }
  return "unknown";
}

BoundaryKind parse_boundary_kind(const std::string& name) {
  if (name == "dirichlet") return BoundaryKind::kDirichlet;
  if (name == "neumann") return BoundaryKind::kNeumann;
  if (name == "robin") return BoundaryKind::kRobin;
  throw DomainError("unknown boundary condition '" + name + "'");
}

void CapProblem::validate() const {
  if (!(theta0 > 0.0 && theta0 < std::numbers::pi)) {
    throw DomainError("cap: theta0 must lie in (0, pi)");
  }
  if (!(nu_max > 0.0) || !std::isfinite(nu_max)) {
    throw DomainError("cap: nu_max must be finite and > 0");
  }
  if (bc.kind == BoundaryKind::kRobin && !(bc.sigma >= 0.0)) {
    throw DomainError("cap: Robin parameter must be >= 0");
  }
}

std::vector<double> CapSpectrum::lambdas() const {
  std::vector<double> out;
  out.reserve(eigenvalues.size());
  for (const auto& e : eigenvalues) {
    out.push_back(e.lambda);
  }
  return out;
}

double cap_residual(int m, double nu, const CapProblem& problem) {
  problem.validate();
  if (m < 0 || !(nu > m - 1.0)) {
    throw DomainError("cap_residual: needs m >= 0 and nu > m - 1");
  }
  const double x0 = std::cos(problem.theta0);
  const double rim = std::sin(problem.theta0);
  const auto p = specfun::legendre_P_normalized({nu, m, x0});
  switch (problem.bc.kind) {
    case BoundaryKind::kDirichlet: return p.value;
    case BoundaryKind::kNeumann: return rim * p.derivative;
    case BoundaryKind::kRobin: return problem.bc.sigma * p.value - rim * p.derivative;
  }
  return p.value;
}

// lambda >= m^2 in sector m (the m^2/sin^2 term of the Rayleigh quotient),
// so nu >= sqrt(m^2 + 1/4) - 1/2 > m - 1/2.
double scan_start(int m) { return m == 0 ? 0.0 : m - 0.5; }

std::vector<CapEigenvalue> sector_eigenvalues(int m, const CapProblem& problem,
                                              std::vector<std::string>* warnings) {
  problem.validate();
  std::vector<CapEigenvalue> out;
  const double start = scan_start(m);
  if (start >= problem.nu_max) {
    return out;
  }
  auto f = [&](double nu) { return cap_residual(m, nu, problem); };

  std::vector<double> grid;
  for (long long i = 0;; ++i) {
    const double nu = start + kGridStep * static_cast<double>(i);
    if (nu >= problem.nu_max) {
      break;
    }
    grid.push_back(nu);
  }
  grid.push_back(problem.nu_max);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
  }

  std::vector<double> roots;
  auto bracket = [&](double a, double b, double fa, double fb) {
    roots.push_back(brent_root(f, a, b, fa, fb));
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] == 0.0) {
      roots.push_back(grid[i]);
      continue;
    }
    if (i > 0 && opposite(values[i - 1], values[i])) {
      bracket(grid[i - 1], grid[i], values[i - 1], values[i]);
    }
    // |residual| dipping between two same-signed neighbours may hide a pair
    // of roots inside one cell; resample the two cells around the dip.
    if (i > 0 && i + 1 < grid.size() && !opposite(values[i - 1], values[i]) &&
        !opposite(values[i], values[i + 1]) && values[i - 1] != 0.0 && values[i + 1] != 0.0 &&
        std::fabs(values[i]) < std::fabs(values[i - 1]) &&
        std::fabs(values[i]) < std::fabs(values[i + 1])) {
      const double a = grid[i - 1];
      const double b = grid[i + 1];
      double prev_nu = a;
      double prev_f = values[i - 1];
      bool found = false;
      for (int k = 1; k <= 2 * kRefineSubdivisions; ++k) {
        const double nu = a + (b - a) * k / (2.0 * kRefineSubdivisions);
        const double fv = (k == 2 * kRefineSubdivisions) ? values[i + 1] : f(nu);
        if (fv == 0.0 && k != kRefineSubdivisions) {
          roots.push_back(nu);
          found = true;
        } else if (opposite(prev_f, fv)) {
          bracket(prev_nu, nu, prev_f, fv);
          found = true;
        }
        if (fv != 0.0) {
          prev_nu = nu;
          prev_f = fv;
        }
      }
      if (found && warnings != nullptr) {
        warnings->push_back("grid too coarse: m=" + std::to_string(m) +
                            " has two roots near nu=" + io::format_real(grid[i]));
      }
    }
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max(1.0, b); }),
              roots.end());
  for (double nu : roots) {
    if (nu >= problem.nu_max) {
      continue;
    }
    out.push_back({m, nu, nu * (nu + 1.0), f(nu)});
  }
  return out;
}

CapSpectrum cap_spectrum(const CapProblem& problem, unsigned threads) {
  problem.validate();
  CapSpectrum s;
  s.problem = problem;
  const unsigned batch = resolve_threads(threads);
  int empty_run = 0;
  for (int m0 = 0; empty_run < kEmptySectorsToStop; m0 += static_cast<int>(batch)) {
    std::vector<std::vector<CapEigenvalue>> found(batch);
    std::vector<std::vector<std::string>> notes(batch);
    parallel_for(batch, threads, [&](std::size_t k) {
      found[k] = sector_eigenvalues(m0 + static_cast<int>(k), problem, &notes[k]);
    });
    for (unsigned k = 0; k < batch && empty_run < kEmptySectorsToStop; ++k) {
      const auto& sector = found[k];
      empty_run = sector.empty() ? empty_run + 1 : 0;
      s.count_per_m.push_back(static_cast<int>(sector.size()));
      s.eigenvalues.insert(s.eigenvalues.end(), sector.begin(), sector.end());
      s.warnings.insert(s.warnings.end(), notes[k].begin(), notes[k].end());
    }
  }
  while (!s.count_per_m.empty() && s.count_per_m.back() == 0) {
    s.count_per_m.pop_back();
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const auto& a, const auto& b) {
    return std::tie(a.lambda, a.m) < std::tie(b.lambda, b.m);
  });
  return s;
}

CapSpacingReport cap_spacing_report(const CapSpectrum& spectrum, const stats::SpacingBins& bins) {
  if (spectrum.eigenvalues.size() < kMinSpacingSample) {
    throw SampleError("cap_spacing_report: needs at least 500 eigenvalues, got " +
                      std::to_string(spectrum.eigenvalues.size()));
  }
  CapSpacingReport r;
  const auto levels = spectrum.lambdas();
  r.histogram = stats::spacing_histogram(levels, bins);
  r.ks_poisson = stats::ks_distance(r.histogram.normalized,
                                    [](double s) { return s > 0.0 ? -std::expm1(-s) : 0.0; });
  return r;
}

CapSpacingReport cap_spacing_report(const CapProblem& problem, const stats::SpacingBins& bins) {
  return cap_spacing_report(cap_spectrum(problem), bins);
}

void write_cap_csv(std::ostream& out, const CapSpectrum& spectrum) {
  out << "m,nu,lambda,residual\n";
  for (const auto& e : spectrum.eigenvalues) {
    out << e.m << ',' << io::format_real(e.nu) << ',' << io::format_real(e.lambda) << ','
        << io::format_real(e.residual) << '\n';
  }
}

long long counting_function(const CapSpectrum& spectrum, double lambda) {
  return std::count_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                       [lambda](const auto& e) { return e.lambda <= lambda; });
}

double weyl_count(double theta0, double lambda) {
  const double area = 2.0 * std::numbers::pi * (1.0 - std::cos(theta0));
  return area / (8.0 * std::numbers::pi) * lambda;
}

}  // namespace hemirobin::cap
