// Copyright 2026 The dcube Authors
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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "dcube/harness.hpp"

using namespace dcube;

namespace {

ExperimentConfig free_dimer(const std::string& method) {
  ExperimentConfig c;
  c.method = method;
  c.model.g = {0.0};
  c.model.n_b = 2;
  c.t_max = 1.5;
  c.n_points = 4;
  c.samples = 20;
  c.trotter_n = 3;
  return c;
}

TimeSeries tone(std::size_t m, double dt, double omega0, double decay) {
  TimeSeries ts;
  for (std::size_t p = 0; p < m; ++p) {
    const double t = dt * static_cast<double>(p);
    ts.times.push_back(t);
    ts.values.push_back(-kI * std::exp(Complex(-decay * t, omega0 * t)));
    ts.std_errors.push_back(0.0);
  }
  return ts;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("free dimer densities agree across methods") {
    for (const char* method : {"exact", "stochastic", "dcube"}) {
      CAPTURE(method);
      const DensityResult r = run_density_experiment(free_dimer(method));
      REQUIRE(r.sites == std::vector<int>{0, 1});
      for (std::size_t i = 0; i < r.series[0].size(); ++i) {
        const double t = r.series[0].times[i];
        CHECK(std::abs(r.series[0].values[i].real() - std::pow(std::cos(t), 2)) < 1e-7);
        CHECK(std::abs(r.series[1].values[i].real() - std::pow(std::sin(t), 2)) < 1e-7);
        CHECK(r.series[0].std_errors[i] == 0.0);
      }
    }
  }

  TEST_CASE("densities stay in the unit interval with coupling") {
    ExperimentConfig c = free_dimer("dcube");
    c.model.g = {3.0};
    c.samples = 200;
    const DensityResult r = run_density_experiment(c);
    for (const TimeSeries& ts : r.series)
      for (const Complex& v : ts.values) CHECK((v.real() >= -1e-12 && v.real() <= 1.0 + 1e-12));
  }

  TEST_CASE("dcube needs the electron-phonon lindbladian") {
    ExperimentConfig c = free_dimer("dcube");
    c.lindbladian = "fermion";
    CHECK_THROWS_AS(run_density_experiment(c), ValidationError);
  }

  TEST_CASE("free green's function") {
    for (const char* method : {"exact", "dcube"}) {
      CAPTURE(method);
      const TimeSeries g = run_gf_experiment(free_dimer(method));
      CHECK(std::abs(g.values[0] - Complex(0.0, -1.0)) < 1e-12);
      for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(g.values[i] - Complex(0.0, -std::cos(g.times[i]))) < 1e-7);
    }
  }

  TEST_CASE("lehmann poles of the free dimer") {
    ModelConfig m;
    m.spinful = true;
    m.J = 1.0;
    const auto poles = lehmann_poles(m, 0, 0);
    REQUIRE(poles.size() == 2);
    CHECK(poles[0].omega == doctest::Approx(-1.0));
    CHECK(poles[1].omega == doctest::Approx(1.0));
    CHECK(poles[0].weight == doctest::Approx(0.5));
    CHECK(poles[1].weight == doctest::Approx(0.5));
  }

  TEST_CASE("ldos of a zero signal vanishes") {
    TimeSeries ts = tone(16, 0.5, 1.0, 0.0);
    for (auto& v : ts.values) v = 0.0;
    for (double x : ldos(ts).ldos) CHECK(x == 0.0);
  }

  TEST_CASE("ldos of a tone peaks at its frequency and obeys the sum rule") {
    const std::size_t m = 64;
    const double dt = 0.5;
    const double omega0 = 2.0 * std::numbers::pi * 5.0 / (m * dt);
    const Spectrum s = ldos(tone(m, dt, omega0, 0.0));
    CHECK(s.omega.size() == m);
    CHECK(s.omega.front() == doctest::Approx(-2.0 * std::numbers::pi * 32.0 / (m * dt)));
    const auto peaks = find_peaks(s, 0.5);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].omega == doctest::Approx(omega0));
    CHECK(ldos_sum_rule(s) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ldos_sum_rule(ldos(tone(m, dt, omega0, 0.0), Window::kHann)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("a decaying tone has full width twice the decay rate") {
    const Spectrum s = ldos(tone(800, 0.05, 1.0, 0.5));
    const auto peaks = find_peaks(s, 0.5);
    REQUIRE(peaks.size() == 1);
    // Within half a frequency bin.
    CHECK(std::abs(peaks[0].omega - 1.0) <= 0.5 * (s.omega[1] - s.omega[0]));
    CHECK(peak_fwhm(s, peaks[0].index) == doctest::Approx(1.0).epsilon(0.1));
  }

  TEST_CASE("ldos input checks") {
    TimeSeries ts = tone(8, 0.5, 1.0, 0.0);
    ts.times[3] += 0.01;
    CHECK_THROWS_AS(ldos(ts), ValidationError);
    CHECK_THROWS_AS(ldos(tone(1, 0.5, 1.0, 0.0)), ValidationError);
  }

  TEST_CASE("truncation sweep is trivial without coupling") {
    ExperimentConfig c = free_dimer("stochastic");
    const auto rows = boson_truncation_sweep(c, {2, 3});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].n_b_from == 2);
    CHECK(rows[0].max_deviation < 1e-9);
  }

  TEST_CASE("csv output round-trips exactly") {
    ExperimentConfig c = free_dimer("stochastic");
    c.model.g = {1.0};
    const DensityResult r = run_density_experiment(c);
    std::ostringstream a;
    write_density_csv(a, r);
    CHECK(a.str().rfind("time,site,density,std_error\n", 0) == 0);
    CHECK(a.str().find('\r') == std::string::npos);
    std::istringstream in(a.str());
    std::ostringstream b;
    write_density_csv(b, read_density_csv(in));
    CHECK(a.str() == b.str());

    const TimeSeries g = run_gf_experiment(free_dimer("exact"));
    std::ostringstream ga;
    write_gf_csv(ga, g);
    std::istringstream gin(ga.str());
    std::ostringstream gb;
    write_gf_csv(gb, read_gf_csv(gin));
    CHECK(ga.str() == gb.str());
    CHECK(format_double(0.1) == "0.10000000000000001");
  }

  TEST_CASE("gamma distribution rows") {
    ExperimentConfig c;
    c.method = "iqp-dist";
    c.model.sites = 1;
    c.model.g = {2.0};
    c.trotter_n = 2;
    c.samples = 500;
    c.gamma_sampler = "exact";
    const auto rows = run_gamma_distribution(c);
    REQUIRE(rows.size() == 4);
    double total = 0.0, freq = 0.0;
    for (const auto& r : rows) {
      total += r.exact_prob;
      freq += r.sampled_freq;
      CHECK(r.bitstring.size() == 2);
    }
    CHECK(total == doctest::Approx(1.0));
    CHECK(freq == doctest::Approx(1.0));
  }
}
