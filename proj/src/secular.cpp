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

#include "hemirobin/secular.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "hemirobin/errors.hpp"
#include "hemirobin/specfun.hpp"

namespace hemirobin::secular {
namespace {

using specfun::gamma_ratio_G;
using specfun::log_gamma_ratio_G_derivative;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Above this sigma the root sits so close to the pole that the solver works
// in eta = 1 - delta and the reciprocal (cotangent) form of the equation.
// The same branch is taken whenever the root lies in delta > 1/2, where the
// spacing of doubles near 1 would otherwise limit the residual.
constexpr double kPoleBranchSigma = 1e6;
constexpr double kBisectWidth = 1e-6;
constexpr double kCertifyRel = 4e-13;
constexpr int kMaxNewton = 200;

// tan(pi u / 2) for u in [0, 1), accurate as u -> 1.
double tan_half_pi_unit(double u) {
  if (u <= 0.5) {
    return std::tan(0.5 * kPi * u);
  }
  return 1.0 / std::tan(0.5 * kPi * (1.0 - u));
}

double g_product(double nu, int m) { return gamma_ratio_G(nu + m) * gamma_ratio_G(nu - m); }

double g_log_slope(double nu, int m) {
  return log_gamma_ratio_G_derivative(nu + m) + log_gamma_ratio_G_derivative(nu - m);
}

struct Bracket {
  double lo;
  double hi;
};

// Newton on an increasing function with f(lo) < 0 < f(hi), falling back to
// bisection whenever a step leaves the bracket. Returns the iterate and the
// final bracket.
template <class Fdf>
std::pair<double, Bracket> newton_in_bracket(Fdf&& fdf, Bracket b, double x) {
  for (int it = 0; it < kMaxNewton; ++it) {
    const auto [fx, dfx] = fdf(x);
    if (fx == 0.0) {
      return {x, {x, x}};
    }
    if (fx < 0.0) {
      b.lo = x;
    } else {
      b.hi = x;
    }
    double next = x - fx / dfx;
    if (!(next > b.lo && next < b.hi)) {
      next = 0.5 * (b.lo + b.hi);
    }
    if (std::fabs(next - x) <= 1e-15 * std::fabs(x) || b.hi - b.lo <= 1e-15 * b.hi) {
      return {next, b};
    }
    x = next;
  }
  throw ConvergenceError("solve_nu: Newton iteration cap reached");
}

// Finds the zero of an increasing f on (0, 1) with f(0) < 0 and f -> +inf at
// 1: bisection to kBisectWidth, Newton polish, then a sign-change check on a
// relative window of kCertifyRel around the answer.
template <class F, class Fdf>
double solve_unit_interval(F&& f, Fdf&& fdf) {
  Bracket b{0.0, 1.0};
  while (b.hi - b.lo > kBisectWidth) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (f(mid) < 0.0) {
      b.lo = mid;
    } else {
      b.hi = mid;
    }
  }
  auto [x, nb] = newton_in_bracket(fdf, b, b.hi);
  const double fx = f(x);
  if (fx == 0.0) {
    return x;
  }
  double lo = x * (1.0 - kCertifyRel);
  double hi = std::min(x * (1.0 + kCertifyRel), std::nextafter(1.0, 0.0));
  if (f(lo) < 0.0 && f(hi) > 0.0) {
    return x;
  }
  // Certification failed: bisect what is left of the Newton bracket.
  lo = nb.lo;
  hi = nb.hi;
  for (int it = 0; it < 200 && hi - lo > 2.0 * kCertifyRel * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > 2.0 * kCertifyRel * hi) {
    throw ConvergenceError("solve_nu: bracket did not contract");
  }
  return 0.5 * (lo + hi);
}

}  // namespace

bool SecularPoint::is_pole() const { return std::isinf(value); }

void check_cluster_order(int ell, int m) {
  if (ell < 0 || m < 0 || m > ell || (ell - m) % 2 != 0) {
    throw DomainError("need 0 <= m <= ell with m = ell (mod 2), got ell=" +
                      std::to_string(ell) + " m=" + std::to_string(m));
  }
}

double secular_S_four_gamma(int m, double nu) {
  if (!(nu > 0.0) || m < 0) {
    throw DomainError("secular_S_four_gamma: needs nu > 0, m >= 0");
  }
  const specfun::SignedLog r_num = specfun::log_reciprocal_gamma(0.5 * (m - nu + 1.0));
  if (r_num.sign == 0) {
    return kInf;
  }
  const specfun::SignedLog r_den = specfun::log_reciprocal_gamma(0.5 * (m - nu));
  if (r_den.sign == 0) {
    return 0.0;
  }
  const double log_mag = specfun::log_gamma_ratio_G(nu + m) + r_den.log_abs - r_num.log_abs;
  return -2.0 * r_num.sign * r_den.sign * std::exp(log_mag);
}

SecularPoint secular_S(int m, double nu) {
  if (!(nu > 0.0) || !std::isfinite(nu) || m < 0) {
    throw DomainError("secular_S: needs finite nu > 0 and m >= 0");
  }
  if (nu <= m) {
    return {m, nu, nu == m ? 0.0 : secular_S_four_gamma(m, nu)};
  }
  const double t = nu - m;
  const double j = std::floor(t);
  const double u = t - j;
  const bool even = std::fmod(j, 2.0) == 0.0;
  if (u == 0.0) {
    return {m, nu, even ? 0.0 : kInf};
  }
  const double gg = g_product(nu, m);
  // Odd j: tan(pi (u - 1) / 2) = -cot(pi u / 2).
  const double tangent = even ? tan_half_pi_unit(u) : -1.0 / tan_half_pi_unit(u);
  return {m, nu, 2.0 * tangent * gg};
}

double secular_S_offset(int ell, int m, double delta) {
  check_cluster_order(ell, m);
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw DomainError("secular_S_offset: delta must lie in [0, 1)");
  }
  if (delta == 0.0) {
    return 0.0;
  }
  return 2.0 * tan_half_pi_unit(delta) * g_product(ell + delta, m);
}

double secular_log_deriv_offset(int ell, int m, double delta) {
  check_cluster_order(ell, m);
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("secular_log_deriv: outside a positivity interval of S_m");
  }
  return kPi / specfun::sin_pi(delta) + g_log_slope(ell + delta, m);
}

double secular_log_deriv(int m, double nu) {
  if (!(nu > m) || m < 0) {
    throw DomainError("secular_log_deriv: outside a positivity interval of S_m");
  }
  const double t = nu - m;
  const double j = std::floor(t);
  const double u = t - j;
  if (std::fmod(j, 2.0) != 0.0 || u == 0.0) {
    throw DomainError("secular_log_deriv: outside a positivity interval of S_m");
  }
  return kPi / specfun::sin_pi(u) + g_log_slope(nu, m);
}

double delta_upper_bound(double sigma, double nu) {
  return std::sqrt(2.0 / kPi) * sigma / std::sqrt(nu);
}

bool delta_bound(const RobinRoot& root) {
  return root.delta < delta_upper_bound(root.sigma, root.nu);
}

RobinRoot solve_nu(int ell, int m, double sigma) {
  check_cluster_order(ell, m);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("solve_nu: sigma must be finite and > 0");
  }
  RobinRoot root{ell, m, sigma, 0.0, 0.0};
  double residual = 0.0;

  const bool near_pole = sigma > kPoleBranchSigma || secular_S_offset(ell, m, 0.5) < sigma;
  if (!near_pole) {
    auto f = [&](double d) { return secular_S_offset(ell, m, d) - sigma; };
    auto fdf = [&](double d) {
      const double s = secular_S_offset(ell, m, d);
      return std::pair{s - sigma, s * secular_log_deriv_offset(ell, m, d)};
    };
    const double delta = solve_unit_interval(f, fdf);
    root.delta = delta;
    root.eta = 1.0 - delta;
    root.nu = ell + delta;
    residual = std::fabs(f(delta));
  } else {
    // tan(pi eta / 2) = 2 G(nu+m) G(nu-m) / sigma with nu = ell + 1 - eta.
    const double top = ell + 1.0;
    auto h = [&](double eta) {
      return tan_half_pi_unit(eta) - 2.0 * g_product(top - eta, m) / sigma;
    };
    auto hdh = [&](double eta) {
      const double t = tan_half_pi_unit(eta);
      const double ratio = 2.0 * g_product(top - eta, m) / sigma;
      return std::pair{t - ratio, 0.5 * kPi * (1.0 + t * t) + ratio * g_log_slope(top - eta, m)};
    };
    const double eta = solve_unit_interval(h, hdh);
    root.delta = 1.0 - eta;
    root.eta = eta;
    root.nu = top - eta;
    const double s = 2.0 * g_product(root.nu, m) / tan_half_pi_unit(eta);
    residual = std::fabs(s - sigma);
  }

  if (!(root.delta > 0.0 && root.delta < 1.0)) {
    throw BracketError("solve_nu: root escaped (ell, ell+1)");
  }
  if (residual > 1e-10 * std::max(sigma, 1.0)) {
    throw ConvergenceError("solve_nu: residual " + std::to_string(residual) +
                           " above tolerance");
  }
  if (!delta_bound(root)) {
    throw ConvergenceError("solve_nu: root violates the delta upper bound");
  }
  return root;
}

}  // namespace hemirobin::secular
