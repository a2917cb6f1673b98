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

// Command-line front end. Every subcommand reads an experiment config and
// writes one CSV file (or stdout when no output path is set), then prints a
// one-line summary.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dcube/config.hpp"
#include "dcube/harness.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<std::string> method;
  std::optional<int> threads;
  std::string out;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config, "Experiment config file")->check(CLI::ExistingFile);
  sub->add_option("--seed", f.seed, "Root seed (u64)");
  sub->add_option("--samples", f.samples, "Monte Carlo samples per time point")->check(CLI::PositiveNumber);
  sub->add_option("--method", f.method, "exact | stochastic | dcube | iqp-dist");
  sub->add_option("--out", f.out, "Output CSV path (default: config 'output', else stdout)");
  sub->add_option("--threads", f.threads, "Worker threads")->check(CLI::PositiveNumber);
}

dcube::ExperimentConfig load(const CommonFlags& f) {
  dcube::ExperimentConfig cfg = f.config.empty() ? dcube::ExperimentConfig{} : dcube::load_config(f.config);
  if (f.seed) cfg.seed = *f.seed;
  if (f.samples) cfg.samples = *f.samples;
  if (f.method) dcube::apply_setting(cfg, "method", *f.method);
  if (f.threads) cfg.threads = *f.threads;
  if (!f.out.empty()) cfg.output = f.out;
  return cfg;
}

// Writes the CSV text; the summary goes to stdout when the CSV went to a
// file and to stderr otherwise so piped output stays parseable.
void emit(const dcube::ExperimentConfig& cfg, const std::string& csv, const std::string& summary) {
  if (cfg.output.empty()) {
    std::cout << csv;
    std::cout.flush();
    std::cerr << summary << '\n';
  } else {
    dcube::write_text_file(cfg.output, csv);
    std::cout << summary << " -> " << cfg.output << '\n';
  }
}

std::string seconds_since(std::chrono::steady_clock::time_point start) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3fs",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcube: dissipative dynamics via stochastic channels, ancilla decoupling and IQP sampling"};
  app.require_subcommand(1);

  CommonFlags sim_f, gamma_f, gf_f, ldos_f, sweep_f;
  auto* sim = app.add_subcommand("simulate", "Site densities over the time grid");
  add_common(sim, sim_f);

  auto* gamma = app.add_subcommand("gamma-dist", "Exact and sampled ancilla outcome distribution");
  add_common(gamma, gamma_f);
  std::optional<double> gamma_time;
  std::optional<std::string> gamma_sampler;
  gamma->add_option("--time", gamma_time, "Evolution time");
  gamma->add_option("--sampler", gamma_sampler, "circuit | exact");

  auto* gf = app.add_subcommand("gf", "Retarded Green's function of one mode");
  add_common(gf, gf_f);

  auto* ld = app.add_subcommand("ldos", "Local density of states from the Green's function");
  add_common(ld, ldos_f);
  std::string gf_csv;
  std::optional<std::string> window;
  ld->add_option("--gf-csv", gf_csv, "Transform an existing gf CSV instead of running the experiment")
      ->check(CLI::ExistingFile);
  ld->add_option("--window", window, "none | hann");

  auto* sweep = app.add_subcommand("truncation-sweep", "Exact density deviation between boson cutoffs");
  add_common(sweep, sweep_f);
  std::vector<int> n_b_list;
  sweep->add_option("--n-b", n_b_list, "Boson cutoffs (default: config n_b_list)")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  try {
    if (sim->parsed()) {
      const auto cfg = load(sim_f);
      const auto r = dcube::run_density_experiment(cfg);
      std::ostringstream csv;
      dcube::write_density_csv(csv, r);
      std::ostringstream s;
      s << "simulate method=" << cfg.method << " wall=" << seconds_since(start) << " T=" << dcube::format_double(cfg.t_max);
      for (std::size_t j = 0; j < r.sites.size(); ++j)
        s << " n" << r.sites[j] << "=" << dcube::format_double(r.series[j].values.back().real());
      emit(cfg, csv.str(), s.str());
    } else if (gamma->parsed()) {
      auto cfg = load(gamma_f);
      if (gamma_time) cfg.time = *gamma_time;
      if (gamma_sampler) dcube::apply_setting(cfg, "gamma_sampler", *gamma_sampler);
      const auto rows = dcube::run_gamma_distribution(cfg);
      std::ostringstream csv;
      dcube::write_gamma_csv(csv, rows);
      double worst = 0.0;
      for (const auto& row : rows) worst = std::max(worst, std::abs(row.sampled_freq - row.exact_prob));
      std::ostringstream s;
      s << "gamma-dist sampler=" << cfg.gamma_sampler << " wall=" << seconds_since(start)
        << " t=" << dcube::format_double(cfg.time) << " outcomes=" << rows.size()
        << " max|f-p|=" << dcube::format_double(worst);
      emit(cfg, csv.str(), s.str());
    } else if (gf->parsed()) {
      const auto cfg = load(gf_f);
      const auto ts = dcube::run_gf_experiment(cfg);
      std::ostringstream csv;
      dcube::write_gf_csv(csv, ts);
      std::ostringstream s;
      s << "gf method=" << cfg.method << " wall=" << seconds_since(start) << " T=" << dcube::format_double(cfg.t_max)
        << " G=" << dcube::format_double(ts.values.back().real()) << (ts.values.back().imag() < 0 ? "" : "+")
        << dcube::format_double(ts.values.back().imag()) << "i";
      emit(cfg, csv.str(), s.str());
    } else if (ld->parsed()) {
      auto cfg = load(ldos_f);
      if (window) dcube::apply_setting(cfg, "window", *window);
      dcube::TimeSeries ts;
      if (!gf_csv.empty()) {
        std::ifstream in(gf_csv, std::ios::binary);
        ts = dcube::read_gf_csv(in);
      } else {
        ts = dcube::run_gf_experiment(cfg);
      }
      const auto spec = dcube::ldos(ts, cfg.window == "hann" ? dcube::Window::kHann : dcube::Window::kNone);
      std::ostringstream csv;
      dcube::write_ldos_csv(csv, spec);
      const auto peaks = dcube::find_peaks(spec, 0.1);
      std::ostringstream s;
      s << "ldos method=" << cfg.method << " wall=" << seconds_since(start) << " points=" << spec.omega.size()
        << " sum_rule=" << dcube::format_double(dcube::ldos_sum_rule(spec)) << " peaks=" << peaks.size();
      emit(cfg, csv.str(), s.str());
    } else if (sweep->parsed()) {
      const auto cfg = load(sweep_f);
      const auto rows = dcube::boson_truncation_sweep(cfg, n_b_list.empty() ? cfg.n_b_list : n_b_list);
      std::ostringstream csv;
      dcube::write_truncation_csv(csv, rows);
      std::ostringstream s;
      s << "truncation-sweep method=exact wall=" << seconds_since(start) << " T=" << dcube::format_double(cfg.t_max)
        << " last_deviation=" << dcube::format_double(rows.back().max_deviation);
      emit(cfg, csv.str(), s.str());
    }
  } catch (const dcube::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const dcube::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const dcube::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
