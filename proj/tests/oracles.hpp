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

// Independent test-side oracles: MPFR Gamma/digamma, an ODE integrator for
// the Legendre equation, the classical polynomial recurrence and adaptive
// quadrature. None of them call into the library.

#ifndef HEMIROBIN_TESTS_ORACLES_HPP_
#define HEMIROBIN_TESTS_ORACLES_HPP_

#include <mpfr.h>

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

constexpr mpfr_prec_t kBits = 256;

// RAII wrapper for one MPFR variable.
class Mp {
 public:
  Mp() { mpfr_init2(v_, kBits); }
  explicit Mp(double d) : Mp() { mpfr_set_d(v_, d, MPFR_RNDN); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  ~Mp() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

// G(s) = Gamma(s/2+1)/Gamma((s+1)/2) in 256-bit arithmetic; `out` receives it.
inline void mp_G(mpfr_ptr out, mpfr_srcptr s) {
  Mp a, b;
  mpfr_div_ui(a.get(), s, 2, MPFR_RNDN);
  mpfr_add_ui(a.get(), a.get(), 1, MPFR_RNDN);
  mpfr_gamma(a.get(), a.get(), MPFR_RNDN);
  mpfr_add_ui(b.get(), s, 1, MPFR_RNDN);
  mpfr_div_ui(b.get(), b.get(), 2, MPFR_RNDN);
  mpfr_gamma(b.get(), b.get(), MPFR_RNDN);
  mpfr_div(out, a.get(), b.get(), MPFR_RNDN);
}

inline double G(double s) {
  Mp x(s), out;
  mp_G(out.get(), x.get());
  return out.to_double();
}

inline double lgamma(double s) {
  Mp x(s);
  int sign = 0;
  mpfr_lgamma(x.get(), &sign, x.get(), MPFR_RNDN);
  return x.to_double();
}

inline double digamma(double s) {
  Mp x(s);
  mpfr_digamma(x.get(), x.get(), MPFR_RNDN);
  return x.to_double();
}

// S_m(nu) - sigma in 256 bits for nu > m.
inline void mp_secular_minus(mpfr_ptr out, int m, mpfr_srcptr nu, double sigma) {
  Mp t, g1, g2, arg;
  mpfr_add_si(t.get(), nu, m, MPFR_RNDN);
  mpfr_const_pi(arg.get(), MPFR_RNDN);
  mpfr_mul(arg.get(), arg.get(), t.get(), MPFR_RNDN);
  mpfr_div_ui(arg.get(), arg.get(), 2, MPFR_RNDN);
  mpfr_tan(arg.get(), arg.get(), MPFR_RNDN);
  mp_G(g1.get(), t.get());
  mpfr_sub_si(t.get(), nu, m, MPFR_RNDN);
  mp_G(g2.get(), t.get());
  mpfr_mul(out, arg.get(), g1.get(), MPFR_RNDN);
  mpfr_mul(out, out, g2.get(), MPFR_RNDN);
  mpfr_mul_ui(out, out, 2, MPFR_RNDN);
  mpfr_sub_d(out, out, sigma, MPFR_RNDN);
}

// Bisection for S_m(nu) = sigma on (ell, ell+1) carried out in 256 bits.
inline double robin_root(int ell, int m, double sigma) {
  Mp lo, hi, mid, f;
  mpfr_set_si(lo.get(), ell, MPFR_RNDN);
  mpfr_set_si(hi.get(), ell + 1, MPFR_RNDN);
  for (int it = 0; it < 240; ++it) {
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_ui(mid.get(), mid.get(), 2, MPFR_RNDN);
    mp_secular_minus(f.get(), m, mid.get(), sigma);
    if (mpfr_sgn(f.get()) > 0) {
      mpfr_set(hi.get(), mid.get(), MPFR_RNDN);
    } else {
      mpfr_set(lo.get(), mid.get(), MPFR_RNDN);
    }
  }
  return mid.to_double();
}

// Ferrers P_l^m(x) with the Condon-Shortley phase, from the C++17 special
// math function (which omits the phase).
inline double ferrers_integer(unsigned l, unsigned m, double x) {
  return ((m % 2) ? -1.0 : 1.0) * std::assoc_legendre(l, m, x);
}

// RK4 for (1-x^2) y'' - 2x y' + (nu(nu+1) - m^2/(1-x^2)) y = 0 from x0 to x1.
struct OdeState {
  double y;
  double dy;
};

inline OdeState legendre_ode(double nu, int m, double x0, OdeState s, double x1, int steps) {
  auto rhs = [&](double x, const OdeState& u) -> OdeState {
    const double w = 1.0 - x * x;
    return {u.dy, (2.0 * x * u.dy - (nu * (nu + 1.0) - m * m / w) * u.y) / w};
  };
  const double h = (x1 - x0) / steps;
  double x = x0;
  for (int i = 0; i < steps; ++i) {
    const auto k1 = rhs(x, s);
    const auto k2 = rhs(x + h / 2, {s.y + h / 2 * k1.y, s.dy + h / 2 * k1.dy});
    const auto k3 = rhs(x + h / 2, {s.y + h / 2 * k2.y, s.dy + h / 2 * k2.dy});
    const auto k4 = rhs(x + h, {s.y + h * k3.y, s.dy + h * k3.dy});
    s.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    s.dy += h / 6 * (k1.dy + 2 * k2.dy + 2 * k3.dy + k4.dy);
    x += h;
  }
  return s;
}

// P_nu^m(0) and its derivative from the DLMF 14.5.1-14.5.2 closed forms,
// evaluated directly with std::tgamma (small arguments only).
inline OdeState ferrers_at0(double nu, int m) {
  const double pi = std::numbers::pi;
  const double c = std::pow(2.0, m) / std::sqrt(pi);
  const double v = c * std::cos(pi * (nu + m) / 2) * std::tgamma((nu + m + 1) / 2) /
                   std::tgamma((nu - m) / 2 + 1);
  const double d = 2.0 * c * std::sin(pi * (nu + m) / 2) * std::tgamma((nu + m) / 2 + 1) /
                   std::tgamma((nu - m + 1) / 2);
  return {v, d};
}

// Adaptive Simpson quadrature.
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15 * tol) {
    return left + right + (left + right - whole) / 15;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return simpson_step(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), tol, 20);
}

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

// Five-point stencil, O(h^4).
inline double central_diff5(const std::function<double(double)>& f, double x, double h) {
  return (8 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12 * h);
}

inline double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(std::fabs(want), 1e-300);
}

}  // namespace oracle

#endif  // HEMIROBIN_TESTS_ORACLES_HPP_
