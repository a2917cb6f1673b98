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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcube/models.hpp"

namespace dcube {

/// Malformed configuration text; what() starts with "source:line:".
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Experiment description. The file format is one `key = value` per line,
/// `#` starts a comment, lists are comma separated. See README for the keys.
struct ExperimentConfig {
  std::string method = "exact";       // exact | stochastic | dcube | iqp-dist
  std::string lindbladian = "eph";    // eph | fermion
  std::string initial = "fock";       // fock | ground
  ModelConfig model;

  double t_max = 2.0;
  int n_points = 9;
  int trotter_n = 2;                  // R for stochastic, N for dcube
  int n_rho = 0;                      // 0 -> ceil(N^(1/4))
  int n_eta = 0;                      // 0 -> N
  int order = 2;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  int threads = 1;

  std::vector<int> density_sites;     // empty -> every site
  int gf_site = 0;
  int gf_spin = 0;
  std::string gamma_sampler = "circuit";  // circuit | exact
  double time = 1.0;                  // gamma-dist evaluation time
  std::vector<int> n_b_list{2, 4, 8};
  std::string window = "none";        // none | hann
  std::string output;

  void validate() const;
  std::vector<double> time_grid() const;
};

/// Applies one key/value pair; throws ValidationError on unknown keys or
/// malformed values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const ExperimentConfig& cfg);

}  // namespace dcube
