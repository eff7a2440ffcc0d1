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

// hemirobin: command-line front end for the Robin hemisphere and spherical
// cap solvers.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hemirobin/acceptance.hpp"
#include "hemirobin/cap.hpp"
#include "hemirobin/errors.hpp"
#include "hemirobin/secular.hpp"
#include "hemirobin/spectrum.hpp"
#include "hemirobin/spectrum_io.hpp"
#include "hemirobin/stats.hpp"

namespace {

using hemirobin::io::format_real;
using json = nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

enum class Format { kCsv, kJson };

struct Common {
  std::string format = "csv";
  std::string output;
  unsigned threads = 0;

  Format fmt() const { return format == "json" ? Format::kJson : Format::kCsv; }
};

// A missing or invalid argument, reported with exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output,-o", c.output,
                  "Output file; relative paths resolve against $HEMIROBIN_OUTPUT_DIR. "
                  "Default: standard output");
  cmd->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

// Writes `body` to the requested destination.
void emit(const Common& c, const std::string& body) {
  if (c.output.empty() || c.output == "-") {
    std::cout << body;
    std::cout.flush();
    return;
  }
  std::filesystem::path path(c.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("HEMIROBIN_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      path = std::filesystem::path(dir) / path;
    }
  }
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open output file " + path.string());
  }
  out << body;
  if (!out) {
    throw ConfigError("failed writing " + path.string());
  }
}

std::string dump(const json& j) { return j.dump(1) + "\n"; }

// ---- spectrum --------------------------------------------------------------

struct SpectrumArgs {
  Common c;
  double sigma = 1.0;
  int ell_max = 10;
};

void run_spectrum(const SpectrumArgs& a) {
  const auto s = hemirobin::spectrum::build_spectrum(a.sigma, a.ell_max, a.c.threads);
  std::ostringstream out;
  if (a.c.fmt() == Format::kJson) {
    hemirobin::io::write_spectrum_json(out, s);
  } else {
    hemirobin::io::write_spectrum_csv(out, s);
  }
  emit(a.c, out.str());
}

// ---- clusters --------------------------------------------------------------

void run_clusters(const SpectrumArgs& a) {
  namespace sp = hemirobin::spectrum;
  namespace st = hemirobin::stats;
  if (!(a.sigma > 0.0)) {
    throw ConfigError("clusters needs --sigma > 0");
  }
  std::ostringstream out;
  json rows = json::array();
  out << "ell,size,start_index,gap_mean,gap_min,gap_max,szego_ks\n";
  for (int ell = 0; ell <= a.ell_max; ++ell) {
    const auto c = sp::robin_cluster(ell, a.sigma, a.c.threads);
    double lo = c.entries.front().rn_gap;
    double hi = lo;
    for (const auto& e : c.entries) {
      lo = std::min(lo, e.rn_gap);
      hi = std::max(hi, e.rn_gap);
    }
    const double mean = st::cluster_gap_mean(c);
    std::optional<double> ks;
    if (ell >= 50) {
      ks = st::szego_ks_distance(st::gap_sample(c));
    }
    out << ell << ',' << c.entries.size() << ',' << c.start_index << ',' << format_real(mean) << ','
        << format_real(lo) << ',' << format_real(hi) << ',' << (ks ? format_real(*ks) : "") << '\n';
    json row = {{"ell", ell},        {"size", c.entries.size()}, {"start_index", c.start_index},
                {"gap_mean", mean},  {"gap_min", lo},            {"gap_max", hi}};
    row["szego_ks"] = ks ? json(*ks) : json(nullptr);
    rows.push_back(row);
  }
  if (a.c.fmt() == Format::kCsv) {
    emit(a.c, out.str());
    return;
  }
  json j = {{"sigma", a.sigma}, {"ell_max", a.ell_max}, {"clusters", rows}};
  if (a.ell_max >= 10) {
    const auto g = st::gap_bound_constants(sp::build_spectrum(a.sigma, a.ell_max, a.c.threads),
                                           sp::build_spectrum(0.0, a.ell_max, a.c.threads));
    j["gap_bound_constants"] = {{"upper", g.upper},
                                {"upper_argmax_n", g.upper_argmax},
                                {"lower", g.lower},
                                {"lower_argmax_ell", g.lower_argmax_ell},
                                {"top_ratio_at_ell_max", g.top_ratio_at_ell_max}};
  }
  emit(a.c, dump(j));
}

// ---- gaps ------------------------------------------------------------------

struct GapsArgs {
  Common c;
  double sigma = 1.0;
  int ell = 150;
};

void run_gaps(const GapsArgs& a) {
  namespace sp = hemirobin::spectrum;
  const auto c = sp::robin_cluster(a.ell, a.sigma, a.c.threads);
  if (a.c.fmt() == Format::kCsv) {
    std::ostringstream out;
    hemirobin::stats::write_gap_table_csv(out, c);
    emit(a.c, out.str());
    return;
  }
  json rows = json::array();
  for (const auto& e : c.entries) {
    rows.push_back({{"m", e.m},
                    {"gap_exact", e.rn_gap},
                    {"gap_asymptotic", a.ell == 0 ? json(nullptr)
                                                  : json(sp::gap_asymptotic(a.ell, e.m, a.sigma))}});
  }
  emit(a.c, dump({{"ell", a.ell},
                  {"sigma", a.sigma},
                  {"mean", hemirobin::stats::cluster_gap_mean(c)},
                  {"gaps", rows}}));
}

// ---- szego -----------------------------------------------------------------

struct SzegoArgs {
  Common c;
  double sigma = 1.0;
  std::vector<int> ells{100, 400, 1600, 6400};
};

void run_szego(const SzegoArgs& a) {
  namespace st = hemirobin::stats;
  std::ostringstream out;
  out << "ell,gap,empirical_cdf,szego_cdf\n";
  json summary = json::array();
  for (int ell : a.ells) {
    auto sample = st::gap_sample(hemirobin::spectrum::robin_cluster(ell, a.sigma, a.c.threads));
    const double ks = st::szego_ks_distance(sample);
    auto gaps = sample.gaps;
    std::sort(gaps.begin(), gaps.end());
    const double n = static_cast<double>(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      out << ell << ',' << format_real(gaps[i]) << ',' << format_real((i + 1) / n) << ','
          << format_real(st::szego_cdf(gaps[i], a.sigma)) << '\n';
    }
    summary.push_back({{"ell", ell}, {"n_gaps", gaps.size()}, {"ks_distance", ks}});
  }
  emit(a.c, a.c.fmt() == Format::kJson ? dump({{"sigma", a.sigma}, {"clusters", summary}})
                                       : out.str());
}

// ---- spacings --------------------------------------------------------------

struct SpacingsArgs {
  Common c;
  double sigma = 1.0;
  int ell_max = 300;
  std::string input;
  int bins = 100;
  double hi = 5.0;
  std::vector<double> tails{0.5, 1.0, 2.0};
};

json histogram_json(const hemirobin::stats::SpacingHistogram& h, const std::vector<double>& tails) {
  json bins = json::array();
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    bins.push_back({{"bin_left", h.bin_edges[i]},
                    {"bin_right", h.bin_edges[i + 1]},
                    {"count", h.counts[i]},
                    {"density", h.density(i)}});
  }
  json tail = json::array();
  for (double y : tails) {
    tail.push_back({{"y", y}, {"fraction", h.tail_fraction(y)}});
  }
  return {{"n_samples", h.n_samples},
          {"mean_raw_spacing", h.mean_raw_spacing},
          {"overflow", h.overflow},
          {"tail_fractions", tail},
          {"bins", bins}};
}

void run_spacings(const SpacingsArgs& a) {
  namespace st = hemirobin::stats;
  hemirobin::spectrum::Spectrum s;
  if (!a.input.empty()) {
    std::ifstream in(a.input);
    if (!in) {
      throw ConfigError("cannot open input file " + a.input);
    }
    s = hemirobin::io::read_spectrum_csv(in);
  } else {
    s = hemirobin::spectrum::build_spectrum(a.sigma, a.ell_max, a.c.threads);
  }
  const auto h = st::spacing_distribution(s, {0.0, a.hi, a.bins});
  if (a.c.fmt() == Format::kJson) {
    json j = histogram_json(h, a.tails);
    j["sigma"] = s.sigma;
    j["ell_max"] = s.ell_max;
    std::vector<double> ys;
    for (double y = 1.0; y <= 1e3; y *= 1.5) {
      ys.push_back(y);
    }
    j["tail_bound_constant"] = st::tail_bound_constant(s.lambdas(), ys);
    emit(a.c, dump(j));
  } else {
    std::ostringstream out;
    st::write_histogram_csv(out, h);
    emit(a.c, out.str());
  }
}

// ---- cap -------------------------------------------------------------------

struct CapArgs {
  Common c;
  double theta0 = std::numbers::pi / 3.0;
  bool degrees = false;
  std::string bc = "dirichlet";
  double sigma = 0.0;
  double nu_max = 100.0;
  bool spacings = false;
  int bins = 100;
  double hi = 5.0;
};

void run_cap(const CapArgs& a) {
  namespace cp = hemirobin::cap;
  cp::CapProblem p;
  p.theta0 = a.degrees ? a.theta0 * std::numbers::pi / 180.0 : a.theta0;
  p.bc.kind = cp::parse_boundary_kind(a.bc);
  p.bc.sigma = a.sigma;
  p.nu_max = a.nu_max;
  if (p.bc.kind != cp::BoundaryKind::kRobin && a.sigma != 0.0) {
    throw ConfigError("--sigma only applies to --bc robin");
  }
  p.validate();
  const auto s = cp::cap_spectrum(p, a.c.threads);
  for (const auto& w : s.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  if (a.spacings) {
    const auto r = cp::cap_spacing_report(s, {0.0, a.hi, a.bins});
    if (a.c.fmt() == Format::kJson) {
      json j = histogram_json(r.histogram, {0.5, 1.0, 2.0});
      j["ks_poisson"] = r.ks_poisson;
      j["total"] = s.eigenvalues.size();
      emit(a.c, dump(j));
    } else {
      std::ostringstream out;
      hemirobin::stats::write_histogram_csv(out, r.histogram);
      emit(a.c, out.str());
    }
    return;
  }
  if (a.c.fmt() == Format::kCsv) {
    std::ostringstream out;
    cp::write_cap_csv(out, s);
    emit(a.c, out.str());
    return;
  }
  json rows = json::array();
  for (const auto& e : s.eigenvalues) {
    rows.push_back({{"m", e.m}, {"nu", e.nu}, {"lambda", e.lambda}, {"residual", e.residual}});
  }
  json j = {{"theta0", p.theta0},
            {"bc", cp::to_string(p.bc.kind)},
            {"sigma", p.bc.sigma},
            {"nu_max", p.nu_max},
            {"total", s.eigenvalues.size()},
            {"count_per_m", s.count_per_m},
            {"warnings", s.warnings},
            {"eigenvalues", rows}};
  j["ks_poisson"] = s.eigenvalues.size() >= 500 ? json(cp::cap_spacing_report(s).ks_poisson)
                                                : json(nullptr);
  emit(a.c, dump(j));
}

// ---- secular-plot ----------------------------------------------------------

struct PlotArgs {
  Common c;
  std::vector<int> orders{4, 5};
  double nu_min = 0.0;
  double nu_max = 10.0;
  double step = 0.01;
  double pole_gap = 0.02;
};

void run_secular_plot(const PlotArgs& a) {
  if (!(a.step > 0.0) || !(a.nu_max > a.nu_min) || a.nu_min < 0.0 || a.pole_gap < 0.0) {
    throw ConfigError("secular-plot needs 0 <= nu-min < nu-max and step > 0");
  }
  std::ostringstream out;
  json series = json::array();
  out << "m,nu,S\n";
  const long long n = static_cast<long long>(std::floor((a.nu_max - a.nu_min) / a.step + 1e-9));
  for (int m : a.orders) {
    if (m < 0) {
      throw ConfigError("secular-plot: orders must be >= 0");
    }
    json pts = json::array();
    for (long long i = 0; i <= n; ++i) {
      const double nu = a.nu_min + a.step * static_cast<double>(i);
      if (nu <= 0.0) {
        continue;
      }
      // skip samples near the poles nu = m + 2k + 1
      const double t = nu - m - 1.0;
      if (t > -1.0 - a.pole_gap && std::fabs(t - 2.0 * std::round(t / 2.0)) < a.pole_gap) {
        continue;
      }
      const auto p = hemirobin::secular::secular_S(m, nu);
      if (p.is_pole()) {
        continue;
      }
      out << m << ',' << format_real(nu) << ',' << format_real(p.value) << '\n';
      pts.push_back({nu, p.value});
    }
    series.push_back({{"m", m}, {"points", pts}});
  }
  emit(a.c, a.c.fmt() == Format::kJson ? dump(series) : out.str());
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  unsigned threads = 0;
  std::vector<int> only;
};

int run_verify(const VerifyArgs& a) {
  namespace acc = hemirobin::acceptance;
  std::vector<acc::CriterionResult> results;
  if (a.only.empty()) {
    results = acc::run_acceptance(std::cout, a.threads);
  } else {
    for (int id : a.only) {
      results.push_back(acc::run_criterion(id, a.threads));
      std::cout << acc::format_result(results.back()) << '\n';
    }
  }
  int failed = 0;
  for (const auto& r : results) {
    failed += r.passed ? 0 : 1;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robin eigenvalues of the hemisphere and Dirichlet/Neumann/Robin spherical caps"};
  app.require_subcommand(1);

  SpectrumArgs spec;
  auto* c_spec = app.add_subcommand("spectrum", "Sorted desymmetrized spectrum up to a cluster");
  c_spec->add_option("--sigma", spec.sigma, "Robin parameter (0 = Neumann)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_spec->add_option("--ell-max", spec.ell_max, "Last complete cluster")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_common(c_spec, spec.c);

  SpectrumArgs clus;
  auto* c_clus = app.add_subcommand("clusters", "Per-cluster RN gap summary");
  c_clus->add_option("--sigma", clus.sigma, "Robin parameter")->capture_default_str();
  c_clus->add_option("--ell-max", clus.ell_max, "Last cluster")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_common(c_clus, clus.c);

  GapsArgs gaps;
  auto* c_gaps = app.add_subcommand("gaps", "RN gaps of one cluster with their asymptotics");
  c_gaps->add_option("--sigma", gaps.sigma, "Robin parameter")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_gaps->add_option("--ell", gaps.ell, "Cluster index")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  add_common(c_gaps, gaps.c);

  SzegoArgs sz;
  auto* c_sz = app.add_subcommand("szego", "Within-cluster gap CDFs against the limit law");
  c_sz->add_option("--sigma", sz.sigma, "Robin parameter")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  c_sz->add_option("--ell", sz.ells, "Cluster indices (>= 50)")->capture_default_str();
  add_common(c_sz, sz.c);

  SpacingsArgs spc;
  auto* c_spc = app.add_subcommand("spacings", "Nearest-neighbour spacing histogram");
  c_spc->add_option("--sigma", spc.sigma, "Robin parameter")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_spc->add_option("--ell-max", spc.ell_max, "Last complete cluster")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_spc->add_option("--input", spc.input, "Spectrum CSV written by `spectrum`");
  c_spc->add_option("--bins", spc.bins, "Histogram bins")->check(CLI::PositiveNumber)->capture_default_str();
  c_spc->add_option("--hi", spc.hi, "Upper histogram edge")->check(CLI::PositiveNumber)->capture_default_str();
  c_spc->add_option("--tail", spc.tails, "Thresholds for tail fractions (json)")->capture_default_str();
  add_common(c_spc, spc.c);

  CapArgs cap;
  auto* c_cap = app.add_subcommand("cap", "Eigenvalues of a spherical cap");
  c_cap->add_option("--theta0", cap.theta0, "Opening angle (radians unless --degrees)")
      ->capture_default_str();
  c_cap->add_flag("--degrees", cap.degrees, "Read --theta0 in degrees");
  c_cap->add_option("--bc", cap.bc, "Boundary condition")
      ->check(CLI::IsMember({"dirichlet", "neumann", "robin"}))
      ->capture_default_str();
  c_cap->add_option("--sigma", cap.sigma, "Robin parameter")->capture_default_str();
  c_cap->add_option("--nu-max", cap.nu_max, "Collect degrees nu < nu-max")->capture_default_str();
  c_cap->add_flag("--spacings", cap.spacings, "Emit the spacing histogram instead");
  c_cap->add_option("--bins", cap.bins, "Histogram bins")->check(CLI::PositiveNumber)->capture_default_str();
  c_cap->add_option("--hi", cap.hi, "Upper histogram edge")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(c_cap, cap.c);

  PlotArgs plot;
  auto* c_plot = app.add_subcommand("secular-plot", "Samples of S_m(nu) away from its poles");
  c_plot->add_option("--m", plot.orders, "Orders")->capture_default_str();
  c_plot->add_option("--nu-min", plot.nu_min, "First degree")->capture_default_str();
  c_plot->add_option("--nu-max", plot.nu_max, "Last degree")->capture_default_str();
  c_plot->add_option("--step", plot.step, "Grid step")->capture_default_str();
  c_plot->add_option("--pole-gap", plot.pole_gap, "Skip samples this close to a pole")
      ->capture_default_str();
  add_common(c_plot, plot.c);

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Run the acceptance suite");
  c_ver->add_option("--threads", ver.threads, "Worker threads (0 = all cores)");
  c_ver->add_option("--criterion", ver.only, "Run only these criteria (1-12)")
      ->check(CLI::Range(1, hemirobin::acceptance::kCriterionCount));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (c_spec->parsed()) {
      run_spectrum(spec);
    } else if (c_clus->parsed()) {
      run_clusters(clus);
    } else if (c_gaps->parsed()) {
      run_gaps(gaps);
    } else if (c_sz->parsed()) {
      run_szego(sz);
    } else if (c_spc->parsed()) {
      run_spacings(spc);
    } else if (c_cap->parsed()) {
      run_cap(cap);
    } else if (c_plot->parsed()) {
      run_secular_plot(plot);
    } else if (c_ver->parsed()) {
      return run_verify(ver);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hemirobin::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hemirobin::SampleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const hemirobin::ConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const hemirobin::BracketError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
