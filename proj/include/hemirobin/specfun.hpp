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

// Special-function kernel: log-Gamma, digamma, the half-integer Gamma ratio
// G(s) = Gamma(s/2+1)/Gamma((s+1)/2), Olver's hypergeometric series and the
// Ferrers functions P_nu^m of the first kind.

#ifndef HEMIROBIN_SPECFUN_HPP_
#define HEMIROBIN_SPECFUN_HPP_

namespace hemirobin::specfun {

/// Truncation control for the hypergeometric series.
struct SeriesControl {
  double rel_tol = 1e-15;
  int max_terms = 100000;

  /// Throws DomainError unless 0 < rel_tol < 1e-6 and max_terms >= 100.
  void validate() const;
};

/// Degree, order and argument of a Ferrers function P_nu^m(x).
struct LegendreArgs {
  double nu = 0.0;
  int m = 0;
  double x = 0.0;
};

struct ValueAndSlope {
  double value = 0.0;
  double derivative = 0.0;
};

/// value * exp(log_scale) and derivative * exp(log_scale) are the true pair.
struct ScaledValueAndSlope {
  double value = 0.0;
  double derivative = 0.0;
  double log_scale = 0.0;
};

/// log|1/Gamma(y)| with its sign; sign == 0 at the poles of Gamma.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 0;
};

double log_gamma(double s);
double digamma(double s);

/// 1/Gamma(y) in log form, valid for every real y.
SignedLog log_reciprocal_gamma(double y);

/// G(s) = Gamma(s/2+1)/Gamma((s+1)/2) for s >= 0.
double gamma_ratio_G(double s);
double log_gamma_ratio_G(double s);
/// (ln G)'(s) = (psi(s/2+1) - psi((s+1)/2)) / 2, which lies in (0, 1/2).
double log_gamma_ratio_G_derivative(double s);

/// cos(pi t / 2) and sin(pi t / 2) with exact zeros at integer t.
double cos_half_pi(double t);
double sin_half_pi(double t);
/// sin(pi t) with exact zeros at integer t.
double sin_pi(double t);

/// Gauss series 2F1(a, b; c; z) = sum (a)_s (b)_s z^s / ((c)_s s!), |z| < 1.
double hypergeometric_2F1(double a, double b, double c, double z,
                          const SeriesControl& ctl = {});

/// Olver's regularized series sum (a)_s (b)_s z^s / (Gamma(c+s) s!).
double olver_F(double a, double b, double c, double z,
               const SeriesControl& ctl = {});

/// Ferrers function P_nu^m(x), x in (-1, 1], Condon-Shortley phase.
double legendre_P(const LegendreArgs& args, const SeriesControl& ctl = {});

/// dP_nu^m/dx for x in (-1, 1).
double legendre_P_dx(const LegendreArgs& args, const SeriesControl& ctl = {});

/// P_nu^m(x) * sqrt(Gamma(nu-m+1)/Gamma(nu+m+1)) and its x-derivative.
///
/// Requires nu > m - 1 so that the normalisation is positive and smooth in
/// nu. Values stay O(1) for large degree and order where the unnormalised
/// function overflows, which is what the cap root finder relies on. The
/// derivative needs x < 1.
ValueAndSlope legendre_P_normalized(const LegendreArgs& args,
                                    const SeriesControl& ctl = {});

/// (P_nu^m(0), dP_nu^m/dx(0)) from the closed Gamma-ratio forms.
ValueAndSlope legendre_P_at0(double nu, int m);

/// Same pair divided by a common positive factor, so ratios survive when the
/// pair itself would overflow (large nu and m).
ScaledValueAndSlope legendre_P_at0_scaled(double nu, int m);

}  // namespace hemirobin::specfun

#endif  // HEMIROBIN_SPECFUN_HPP_
