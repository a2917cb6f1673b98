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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dcube/config.hpp"
#include "dcube/iqp.hpp"
#include "dcube/lindblad.hpp"

namespace dcube {

/// Complex samples on a time grid. std_errors are zero for exact methods.
struct TimeSeries {
  std::vector<double> times;
  std::vector<Complex> values;
  std::vector<double> std_errors;

  void validate() const;
  std::size_t size() const { return times.size(); }
};

struct DensityResult {
  std::vector<int> sites;
  std::vector<TimeSeries> series;  // one per entry of sites
};

struct Spectrum {
  std::vector<double> omega;
  std::vector<double> ldos;
  std::vector<Complex> transform;
};

/// Lindbladian selected by cfg.lindbladian.
LindbladSpec build_model_lindblad(const ExperimentConfig& cfg);

/// IQP register of the electron-phonon model at time t with N = cfg.trotter_n.
IqpSpec iqp_spec_for(const ExperimentConfig& cfg, double t);

DensityResult run_density_experiment(const ExperimentConfig& cfg);

/// G(t) = -i <{c^dag(t), c}> in the ground state of H_F (spin sector
/// N_up = N_down = sites / 2), with theta(0) = 1.
TimeSeries run_gf_experiment(const ExperimentConfig& cfg);

enum class Window { kNone, kHann };

/// Causal transform G(w_q) = dt sum_p w_p x_p exp(-i w_q t_p) with trapezoid
/// end weight w_0 = 1/2, on the centred grid w_q = 2 pi q / (M dt),
/// q = -floor(M/2) .. ceil(M/2) - 1. LDOS = -Im G / pi.
Spectrum ldos(const TimeSeries& ts, Window window = Window::kNone);

/// dw * sum LDOS; equals -Im x_0 for any signal.
double ldos_sum_rule(const Spectrum& s);

struct Peak {
  std::size_t index = 0;
  double omega = 0.0;
  double height = 0.0;
};

/// Strict local maxima with height >= rel_height * global maximum.
std::vector<Peak> find_peaks(const Spectrum& s, double rel_height = 0.1);

/// Full width at half maximum of the peak at index, from linear
/// interpolation of the two half-height crossings. Throws when a crossing
/// falls off the grid.
double peak_fwhm(const Spectrum& s, std::size_t index);

struct Pole {
  double omega = 0.0;
  double weight = 0.0;
};

/// Poles of the closed-system retarded function of mode (site, spin): addition
/// energies E_n - E_0 and removal energies E_0 - E_m with their weights.
std::vector<Pole> lehmann_poles(const ModelConfig& model, int site, int spin, double min_weight = 1e-10);

struct TruncationRow {
  int n_b_from = 0;
  int n_b_to = 0;
  double max_deviation = 0.0;
};

/// Exact densities for each N_b, compared between consecutive entries.
std::vector<TruncationRow> boson_truncation_sweep(const ExperimentConfig& cfg, const std::vector<int>& n_b_list);

struct GammaRow {
  std::string bitstring;  // flat bit 0 first
  double exact_prob = 0.0;
  double sampled_freq = 0.0;
  double sampling_err = 0.0;
};

/// Exact table and sampled frequencies at cfg.time.
std::vector<GammaRow> run_gamma_distribution(const ExperimentConfig& cfg);

// CSV emitters: header row, LF endings, 17 significant digits.
std::string format_double(double x);
void write_density_csv(std::ostream& out, const DensityResult& r);
void write_gf_csv(std::ostream& out, const TimeSeries& ts);
void write_ldos_csv(std::ostream& out, const Spectrum& s);
void write_truncation_csv(std::ostream& out, const std::vector<TruncationRow>& rows);
void write_gamma_csv(std::ostream& out, const std::vector<GammaRow>& rows);

DensityResult read_density_csv(std::istream& in);
TimeSeries read_gf_csv(std::istream& in);

/// Writes text to path in binary mode; throws Error on failure.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dcube
