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

// The secular function S_m(nu) whose level sets S_m(nu) = sigma give the
// Robin degrees on the hemisphere, and the root solver for them.

#ifndef HEMIROBIN_SECULAR_HPP_
#define HEMIROBIN_SECULAR_HPP_

namespace hemirobin::secular {

/// S_m evaluated at nu. value is +infinity exactly at the poles
/// nu = m + 2k + 1.
struct SecularPoint {
  int m = 0;
  double nu = 0.0;
  double value = 0.0;

  bool is_pole() const;
};

/// The unique solution of S_m(nu) = sigma with ell < nu < ell + 1.
/// delta = nu - ell and eta = ell + 1 - nu are kept separately at full
/// relative precision; near the pole (large sigma) only eta resolves the root.
struct RobinRoot {
  int ell = 0;
  int m = 0;
  double sigma = 0.0;
  double nu = 0.0;
  double delta = 0.0;
  double eta = 1.0;
};

/// S_m(nu) = 2 tan(pi(m+nu)/2) G(nu+m) G(nu-m) for nu > m; the four-Gamma
/// form is used on 0 < nu <= m.
SecularPoint secular_S(int m, double nu);

/// -2 Gamma((nu+m)/2+1) Gamma((m-nu+1)/2) / (Gamma((m+nu+1)/2) Gamma((m-nu)/2)).
/// Valid at every non-pole nu > 0; kept for cross-checks.
double secular_S_four_gamma(int m, double nu);

/// S_m(ell + delta) for ell >= m, ell = m (mod 2) and 0 <= delta < 1, with
/// the tangent taken from delta directly.
double secular_S_offset(int ell, int m, double delta);

/// S_m'/S_m on a positivity interval (m+2k, m+2k+1).
double secular_log_deriv(int m, double nu);
double secular_log_deriv_offset(int ell, int m, double delta);

/// Solves S_m(nu) = sigma on (ell, ell+1). Throws DomainError for bad
/// (ell, m, sigma), BracketError/ConvergenceError on numerical failure.
RobinRoot solve_nu(int ell, int m, double sigma);

/// sqrt(2/pi) sigma / sqrt(nu)
double delta_upper_bound(double sigma, double nu);

/// True iff root.delta < delta_upper_bound(root.sigma, root.nu).
bool delta_bound(const RobinRoot& root);

/// Throws DomainError unless 0 <= m <= ell and m = ell (mod 2).
void check_cluster_order(int ell, int m);

}  // namespace hemirobin::secular

#endif  // HEMIROBIN_SECULAR_HPP_
