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

#include "hemirobin/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "hemirobin/errors.hpp"

namespace hemirobin::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kLnPi = 1.1447298858494001741434273513530587;
constexpr double kHalfLn2Pi = 0.91893853320467274178032973640561764;

// Below this argument the asymptotic series are reached through recurrence.
constexpr double kStirlingMin = 15.0;
constexpr double kDigammaMin = 10.0;

// B_{2k} / (2k (2k-1)), k = 1..8.
constexpr std::array<double, 8> kStirlingCoeffs = {
    1.0 / 12.0,          -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0,
    -3617.0 / 122400.0};

// B_{2k} / (2k), k = 1..7.
constexpr std::array<double, 7> kDigammaCoeffs = {
    1.0 / 12.0,  -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};

// sum_k c_k / x^(2k-1)
double stirling_tail(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (auto it = kStirlingCoeffs.rbegin(); it != kStirlingCoeffs.rend(); ++it) {
    acc = acc * inv2 + *it;
  }
  return acc * inv;
}

// sum_k c_k / x^(2k)
double digamma_tail(double x) {
  const double inv2 = 1.0 / (x * x);
  double acc = 0.0;
  for (auto it = kDigammaCoeffs.rbegin(); it != kDigammaCoeffs.rend(); ++it) {
    acc = acc * inv2 + *it;
  }
  return acc * inv2;
}

double log_gamma_stirling(double x) {
  return (x - 0.5) * std::log(x) - x + kHalfLn2Pi + stirling_tail(x);
}

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

// ln Gamma(z + 1/2) - ln Gamma(z), z > 0.
double log_gamma_ratio_half(double z) {
  double prod = 1.0;
  while (z < kStirlingMin) {
    prod *= z / (z + 0.5);
    z += 1.0;
  }
  return std::log(prod) + z * std::log1p(0.5 / z) + 0.5 * std::log(z) - 0.5 +
         (stirling_tail(z + 0.5) - stirling_tail(z));
}

// psi(z + 1/2) - psi(z), z > 0.
double digamma_diff_half(double z) {
  double acc = 0.0;
  while (z < kDigammaMin) {
    acc += 0.5 / (z * (z + 0.5));
    z += 1.0;
  }
  return acc + std::log1p(0.5 / z) + 1.0 / (2.0 * z * (2.0 * z + 1.0)) -
         (digamma_tail(z + 0.5) - digamma_tail(z));
}

void check_legendre_args(const LegendreArgs& args) {
  if (!(args.nu >= 0.0) || !std::isfinite(args.nu)) {
    throw DomainError("legendre: degree must be finite and >= 0, got " +
                      std::to_string(args.nu));
  }
  if (args.m < 0) {
    throw DomainError("legendre: order must be >= 0");
  }
  if (!(args.x > -1.0 && args.x <= 1.0)) {
    throw DomainError("legendre: x must lie in (-1, 1], got " +
                      std::to_string(args.x));
  }
}

// log of (1 - x^2)^(m/2) 2^-m / Gamma(m+1), the order-dependent part of the
// prefactor shared by both normalisations. x == 1 is handled by callers.
double log_order_prefactor(int m, double x) {
  return 0.5 * m * (std::log1p(-x) + std::log1p(x)) - m * kLn2 -
         log_gamma(m + 1.0);
}

// P_nu^m(x) sqrt(Gamma(nu-m+1)/Gamma(nu+m+1)) for m-1 < nu, straight from
// (1-x^2)^(m/2) 2F1(nu+m+1, m-nu; m+1; (1-x)/2). Well conditioned while nu-m
// stays small: the b parameter is then close to zero and the series terms
// share one sign after the first.
double normalized_direct(double nu, int m, double x, const SeriesControl& ctl) {
  const double z = 0.5 * (1.0 - x);
  const double series = hypergeometric_2F1(nu + m + 1.0, m - nu, m + 1.0, z, ctl);
  if (m == 0) {
    return series;
  }
  if (x == 1.0) {
    return 0.0;
  }
  const double log_pref =
      0.5 * (log_gamma(nu + m + 1.0) - log_gamma(nu - m + 1.0)) +
      log_order_prefactor(m, x);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_pref) * series;
}

// Unnormalised P_nu^m(x) from the same series, any nu >= 0. The reciprocal
// Gamma keeps the sign explicit when nu - m + 1 <= 0.
double unnormalized_direct(double nu, int m, double x, const SeriesControl& ctl) {
  const SignedLog rg = log_reciprocal_gamma(nu - m + 1.0);
  if (rg.sign == 0) {
    return 0.0;
  }
  const double z = 0.5 * (1.0 - x);
  const double series = hypergeometric_2F1(nu + m + 1.0, m - nu, m + 1.0, z, ctl);
  if (m == 0) {
    return series;
  }
  if (x == 1.0) {
    return 0.0;
  }
  const double log_pref =
      log_gamma(nu + m + 1.0) + rg.log_abs + log_order_prefactor(m, x);
  const double sign = ((m % 2 == 0) ? 1.0 : -1.0) * rg.sign;
  return sign * std::exp(log_pref) * series;
}

// Normalised values at degrees nu and nu+1, nu > m-1.
//
// Degrees in [m-1, m+1) come from the series; above that the normalised
// three-term recurrence in the degree carries them up. The recurrence is
// forward-stable for the regular solution on (-1, 1).
std::pair<double, double> normalized_pair(double nu, int m, double x,
                                          const SeriesControl& ctl) {
  if (nu < m) {
    return {normalized_direct(nu, m, x, ctl),
            normalized_direct(nu + 1.0, m, x, ctl)};
  }
  const double excess = nu - m;
  const double steps = std::floor(excess);
  const double base = m + (excess - steps);
  double p0 = normalized_direct(base, m, x, ctl);
  double p1 = normalized_direct(base + 1.0, m, x, ctl);
  const auto k = static_cast<long long>(steps);
  for (long long j = 1; j <= k; ++j) {
    const double mu = base + static_cast<double>(j);
    const double p2 =
        ((2.0 * mu + 1.0) * x * p1 - std::sqrt((mu + m) * (mu - m)) * p0) /
        std::sqrt((mu - m + 1.0) * (mu + m + 1.0));
    p0 = p1;
    p1 = p2;
  }
  return {p0, p1};
}

double log_normalization(double nu, int m) {
  return 0.5 * (log_gamma(nu + m + 1.0) - log_gamma(nu - m + 1.0));
}

}  // namespace

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1e-6)) {
    throw DomainError("SeriesControl: rel_tol must lie in (0, 1e-6)");
  }
  if (max_terms < 100) {
    throw DomainError("SeriesControl: max_terms must be >= 100");
  }
}

double log_gamma(double s) {
  if (!(s > 0.0)) {
    throw DomainError("log_gamma: argument must be > 0, got " + std::to_string(s));
  }
  if (s == 1.0 || s == 2.0) {
    return 0.0;
  }
  if (s >= kStirlingMin) {
    return log_gamma_stirling(s);
  }
  double prod = 1.0;
  double x = s;
  while (x < kStirlingMin) {
    prod *= x;
    x += 1.0;
  }
  return log_gamma_stirling(x) - std::log(prod);
}

double digamma(double s) {
  if (!(s > 0.0)) {
    throw DomainError("digamma: argument must be > 0, got " + std::to_string(s));
  }
  double acc = 0.0;
  while (s < kDigammaMin) {
    acc -= 1.0 / s;
    s += 1.0;
  }
  return acc + std::log(s) - 0.5 / s - digamma_tail(s);
}

SignedLog log_reciprocal_gamma(double y) {
  if (y > 0.0) {
    return {-log_gamma(y), 1};
  }
  if (is_integer(y)) {
    return {-std::numeric_limits<double>::infinity(), 0};
  }
  // 1/Gamma(y) = sin(pi y) Gamma(1 - y) / pi
  const double s = sin_pi(y);
  return {std::log(std::fabs(s)) + log_gamma(1.0 - y) - kLnPi, s > 0.0 ? 1 : -1};
}

double log_gamma_ratio_G(double s) {
  if (!(s >= 0.0)) {
    throw DomainError("gamma_ratio_G: argument must be >= 0, got " +
                      std::to_string(s));
  }
  return log_gamma_ratio_half(0.5 * (s + 1.0));
}

double gamma_ratio_G(double s) { return std::exp(log_gamma_ratio_G(s)); }

double log_gamma_ratio_G_derivative(double s) {
  if (!(s >= 0.0)) {
    throw DomainError("log_gamma_ratio_G_derivative: argument must be >= 0");
  }
  return 0.5 * digamma_diff_half(0.5 * (s + 1.0));
}

double sin_pi(double t) {
  const double n = std::nearbyint(t);
  const double e = t - n;
  const double v = std::sin(kPi * e);
  return std::fmod(n, 2.0) == 0.0 ? v : -v;
}

double cos_half_pi(double t) {
  const double n = std::nearbyint(t);
  const double e = t - n;
  const double q = std::fmod(n, 4.0);
  const int quadrant = static_cast<int>(q < 0.0 ? q + 4.0 : q);
  const double h = 0.5 * kPi * e;
  switch (quadrant) {
    case 0: return std::cos(h);
    case 1: return -std::sin(h);
    case 2: return -std::cos(h);
    default: return std::sin(h);
  }
}

double sin_half_pi(double t) {
  const double n = std::nearbyint(t);
  const double e = t - n;
  const double q = std::fmod(n, 4.0);
  const int quadrant = static_cast<int>(q < 0.0 ? q + 4.0 : q);
  const double h = 0.5 * kPi * e;
  switch (quadrant) {
    case 0: return std::sin(h);
    case 1: return std::cos(h);
    case 2: return -std::sin(h);
    default: return -std::cos(h);
  }
}

double hypergeometric_2F1(double a, double b, double c, double z,
                          const SeriesControl& ctl) {
  ctl.validate();
  if (!(std::fabs(z) < 1.0)) {
    throw DomainError("hypergeometric series needs |z| < 1");
  }
  if (c <= 0.0 && is_integer(c)) {
    throw DomainError("hypergeometric series: c must not be a non-positive integer");
  }
  double sum = 1.0;
  double term = 1.0;
  for (int s = 0; s < ctl.max_terms; ++s) {
    const double num = (a + s) * (b + s);
    if (num == 0.0) {
      return sum;
    }
    term *= num * z / ((c + s) * (s + 1.0));
    sum += term;
    const double next = std::fabs((a + s + 1.0) * (b + s + 1.0) * z /
                                  ((c + s + 1.0) * (s + 2.0)));
    if (next < 1.0 &&
        std::fabs(term) * (1.0 + next / (1.0 - next)) <= ctl.rel_tol * std::fabs(sum)) {
      return sum;
    }
  }
  throw ConvergenceError("hypergeometric series: no convergence after " +
                         std::to_string(ctl.max_terms) + " terms");
}

double olver_F(double a, double b, double c, double z, const SeriesControl& ctl) {
  if (!(c > 0.0)) {
    throw DomainError("olver_F: c must be > 0");
  }
  return std::exp(-log_gamma(c)) * hypergeometric_2F1(a, b, c, z, ctl);
}

double legendre_P(const LegendreArgs& args, const SeriesControl& ctl) {
  check_legendre_args(args);
  const auto [nu, m, x] = args;
  if (nu > m - 1.0) {
    const double p = normalized_pair(nu, m, x, ctl).first;
    return p == 0.0 ? 0.0 : p * std::exp(log_normalization(nu, m));
  }
  return unnormalized_direct(nu, m, x, ctl);
}

double legendre_P_dx(const LegendreArgs& args, const SeriesControl& ctl) {
  check_legendre_args(args);
  if (args.x == 1.0) {
    throw DomainError("legendre_P_dx: x must lie in (-1, 1)");
  }
  const auto [nu, m, x] = args;
  if (nu > m - 1.0) {
    return legendre_P_normalized(args, ctl).derivative *
           std::exp(log_normalization(nu, m));
  }
  // (1 - x^2) P' = (m - nu - 1) P_{nu+1} + (nu + 1) x P_nu
  const double p_nu = unnormalized_direct(nu, m, x, ctl);
  const double p_next = legendre_P({nu + 1.0, m, x}, ctl);
  return ((m - nu - 1.0) * p_next + (nu + 1.0) * x * p_nu) / ((1.0 - x) * (1.0 + x));
}

ValueAndSlope legendre_P_normalized(const LegendreArgs& args,
                                    const SeriesControl& ctl) {
  check_legendre_args(args);
  const auto [nu, m, x] = args;
  if (!(nu > m - 1.0)) {
    throw DomainError("legendre_P_normalized: needs nu > m - 1");
  }
  const auto [p, p_next] = normalized_pair(nu, m, x, ctl);
  if (x == 1.0) {
    return {p, std::numeric_limits<double>::quiet_NaN()};
  }
  // (1 - x^2) p' = (nu + 1) x p - sqrt((nu+m+1)(nu-m+1)) p_next
  const double slope =
      ((nu + 1.0) * x * p - std::sqrt((nu + m + 1.0) * (nu - m + 1.0)) * p_next) /
      ((1.0 - x) * (1.0 + x));
  return {p, slope};
}

ScaledValueAndSlope legendre_P_at0_scaled(double nu, int m) {
  if (!(nu >= 0.0) || !std::isfinite(nu) || m < 0) {
    throw DomainError("legendre_P_at0: needs nu >= 0 and m >= 0");
  }
  const double t = nu + m;
  // P(0)  = 2^m / sqrt(pi)     cos(pi t/2) Gamma((nu+m+1)/2) / Gamma((nu-m)/2 + 1)
  // P'(0) = 2^(m+1) / sqrt(pi) sin(pi t/2) Gamma((nu+m)/2 + 1) / Gamma((nu-m+1)/2)
  const SignedLog rv = log_reciprocal_gamma(0.5 * (nu - m) + 1.0);
  const SignedLog rd = log_reciprocal_gamma(0.5 * (nu - m + 1.0));
  const double cv = cos_half_pi(t);
  const double sd = sin_half_pi(t);
  const bool value_zero = rv.sign == 0 || cv == 0.0;
  const bool slope_zero = rd.sign == 0 || sd == 0.0;
  if (value_zero && slope_zero) {
    return {0.0, 0.0, 0.0};
  }
  const double common = m * kLn2 - 0.5 * kLnPi;
  const double lv = value_zero ? -std::numeric_limits<double>::infinity()
                               : common + log_gamma(0.5 * (t + 1.0)) + rv.log_abs;
  const double ld = slope_zero ? -std::numeric_limits<double>::infinity()
                               : common + kLn2 + log_gamma(0.5 * t + 1.0) + rd.log_abs;
  const double scale = std::max(lv, ld);
  ScaledValueAndSlope out;
  out.log_scale = scale;
  out.value = value_zero ? 0.0 : cv * rv.sign * std::exp(lv - scale);
  out.derivative = slope_zero ? 0.0 : sd * rd.sign * std::exp(ld - scale);
  return out;
}

ValueAndSlope legendre_P_at0(double nu, int m) {
  const ScaledValueAndSlope s = legendre_P_at0_scaled(nu, m);
  const double f = std::exp(s.log_scale);
  return {s.value * f, s.derivative * f};
}

}  // namespace hemirobin::specfun
