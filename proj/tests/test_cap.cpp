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
#include <sstream>

#include "hemirobin/cap.hpp"
#include "hemirobin/errors.hpp"
#include "hemirobin/spectrum.hpp"
#include "oracles.hpp"

using namespace hemirobin;
using namespace hemirobin::cap;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

CapProblem pi3_cap(double nu_max = 100.0) { return {kPi / 3, BoundaryCondition::dirichlet(), nu_max}; }

}  // namespace

TEST_CASE("boundary kinds") {
  CHECK(parse_boundary_kind("dirichlet") == BoundaryKind::kDirichlet);
  CHECK(parse_boundary_kind("neumann") == BoundaryKind::kNeumann);
  CHECK(parse_boundary_kind("robin") == BoundaryKind::kRobin);
  CHECK(to_string(BoundaryKind::kRobin) == "robin");
  CHECK_THROWS_AS(parse_boundary_kind("mixed"), DomainError);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS((CapProblem{0.0, BoundaryCondition::dirichlet(), 10}.validate()), DomainError);
  CHECK_THROWS_AS((CapProblem{kPi, BoundaryCondition::dirichlet(), 10}.validate()), DomainError);
  CHECK_THROWS_AS((CapProblem{1.0, BoundaryCondition::dirichlet(), 0}.validate()), DomainError);
  CHECK_THROWS_AS((CapProblem{1.0, BoundaryCondition::robin(-1), 10}.validate()), DomainError);
  CHECK_NOTHROW((CapProblem{1.0, BoundaryCondition::robin(0), 10}.validate()));
  CHECK_THROWS_AS(cap_residual(3, 1.5, pi3_cap()), DomainError);
}

TEST_CASE("cap_residual examples") {
  const CapProblem hd{kPi / 2, BoundaryCondition::dirichlet(), 10};
  CHECK(std::fabs(cap_residual(0, 1.0, hd)) < 1e-15);
  const CapProblem hn{kPi / 2, BoundaryCondition::neumann(), 10};
  CHECK(std::fabs(cap_residual(0, 2.0, hn)) < 1e-15);
  // a sign change brackets the first pi/3 Dirichlet root
  CHECK(cap_residual(0, 4.5, pi3_cap()) * cap_residual(0, 5.0, pi3_cap()) < 0.0);
}

TEST_CASE("first roots against arbitrary-precision and ODE oracles") {
  const auto s0 = sector_eigenvalues(0, pi3_cap(10.0));
  REQUIRE_FALSE(s0.empty());
  CHECK(s0.front().nu == Approx(1.7772882701589462275).epsilon(1e-12));
  const auto s3 = sector_eigenvalues(3, pi3_cap(10.0));
  REQUIRE_FALSE(s3.empty());
  CHECK(s3.front().nu == Approx(5.8532084847142896524).epsilon(1e-12));
  // ODE from the equator to x = 1/2 with closed-form data: the found degree
  // makes the solution vanish at the rim
  for (const auto& root : {s0.front(), s3.front()}) {
    const auto start = oracle::ferrers_at0(root.nu, root.m);
    const auto end = oracle::legendre_ode(root.nu, root.m, 0.0, start, 0.5, 20000);
    const double scale = std::fabs(start.y) + std::fabs(start.dy);
    CHECK(std::fabs(end.y) <= 1e-9 * scale);
  }
}

TEST_CASE("golden count, residuals and per-m structure for the pi/3 cap") {
  const auto s = cap_spectrum(pi3_cap());
  CHECK(s.eigenvalues.size() == 1258);
  CHECK(s.warnings.empty());
  int total = 0;
  for (std::size_t m = 0; m < s.count_per_m.size(); ++m) {
    total += s.count_per_m[m];
    if (m > 0) {
      CHECK(s.count_per_m[m] <= s.count_per_m[m - 1]);
    }
  }
  CHECK(total == 1258);
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    const auto& e = s.eigenvalues[i];
    CHECK(std::fabs(e.residual) <= 1e-8);
    CHECK(e.nu < 100.0);
    CHECK(e.lambda == e.nu * (e.nu + 1.0));
    if (i > 0) {
      CHECK(e.lambda >= s.eigenvalues[i - 1].lambda);
    }
  }
  for (int m = 0; m < 5; ++m) {
    const auto sec = sector_eigenvalues(m, pi3_cap());
    for (std::size_t i = 1; i < sec.size(); ++i) {
      CHECK(sec[i].nu - sec[i - 1].nu > 0.5);
    }
  }
}

TEST_CASE("desymmetrized Weyl law for the pi/3 cap") {
  const auto s = cap_spectrum(pi3_cap());
  for (double lambda = 2000; lambda <= 10000; lambda += 250) {
    const double n = static_cast<double>(counting_function(s, lambda));
    const double w = weyl_count(kPi / 3, lambda);
    CAPTURE(lambda);
    CHECK(std::fabs(n - w) <= 0.1 * w);
  }
  CHECK(weyl_count(kPi / 2, 8.0) == Approx(2.0));
}

TEST_CASE("hemisphere Dirichlet and Neumann degrees are integers of the right parity") {
  for (auto bc : {BoundaryCondition::dirichlet(), BoundaryCondition::neumann()}) {
    const auto s = cap_spectrum({kPi / 2, bc, 20.5});
    const int parity = bc.kind == BoundaryKind::kDirichlet ? 1 : 0;
    int expected = 0;
    for (int ell = 0; ell <= 20; ++ell) {
      for (int m = 0; m <= ell; ++m) {
        expected += (ell - m) % 2 == parity ? 1 : 0;
      }
    }
    CHECK(static_cast<int>(s.eigenvalues.size()) == expected);
    for (const auto& e : s.eigenvalues) {
      const double r = std::round(e.nu);
      CHECK(std::fabs(e.nu - r) <= 1e-9);
      CHECK((static_cast<int>(r) - e.m) % 2 == parity);
    }
  }
}

TEST_CASE("hemisphere Robin cap matches the secular solver") {
  for (double sigma : {0.3, 1.0, 7.0}) {
    const auto c = cap_spectrum({kPi / 2, BoundaryCondition::robin(sigma), 21.0});
    const auto s = spectrum::build_spectrum(sigma, 20);
    REQUIRE(c.eigenvalues.size() == s.eigenvalues.size());
    for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
      CHECK(c.eigenvalues[i].m == s.eigenvalues[i].m);
      CHECK(oracle::rel_err(c.eigenvalues[i].lambda, s.eigenvalues[i].lambda) <= 1e-8);
    }
  }
}

TEST_CASE("Robin with sigma = 0 equals Neumann") {
  const auto a = cap_spectrum({1.0, BoundaryCondition::robin(0.0), 30.0});
  const auto b = cap_spectrum({1.0, BoundaryCondition::neumann(), 30.0});
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    CHECK(a.eigenvalues[i].nu == Approx(b.eigenvalues[i].nu).epsilon(1e-12));
  }
}

TEST_CASE("Dirichlet eigenvalues decrease as the cap grows") {
  const auto small = cap_spectrum({kPi / 4, BoundaryCondition::dirichlet(), 40.0});
  const auto large = cap_spectrum({kPi / 3, BoundaryCondition::dirichlet(), 40.0});
  CHECK(large.eigenvalues.size() > small.eigenvalues.size());
  CHECK(large.eigenvalues.front().lambda < small.eigenvalues.front().lambda);
}

TEST_CASE("Poisson report") {
  const auto r = cap_spacing_report(pi3_cap());
  CHECK(r.histogram.n_samples == 1257);
  CHECK(r.ks_poisson < 0.1);
  const auto d = cap_spacing_report(CapProblem{kPi / 2, BoundaryCondition::dirichlet(), 100.0});
  CHECK(d.ks_poisson > 0.9);
  CHECK(5 * r.ks_poisson < d.ks_poisson);
  CHECK_THROWS_AS(cap_spacing_report(pi3_cap(50.0)), SampleError);
}

TEST_CASE("threads do not change the result") {
  const auto a = cap_spectrum(pi3_cap(60.0), 1);
  const auto b = cap_spectrum(pi3_cap(60.0), 4);
  REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
  for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
    CHECK(a.eigenvalues[i].nu == b.eigenvalues[i].nu);
  }
  CHECK(a.count_per_m == b.count_per_m);
}

TEST_CASE("CSV output") {
  const auto s = cap_spectrum(pi3_cap(12.0));
  std::ostringstream out;
  write_cap_csv(out, s);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "m,nu,lambda,residual");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
  }
  CHECK(rows == s.eigenvalues.size());
}
