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
#include <string>
#include <vector>

#include "dcube/sampling.hpp"
#include "dcube/tensor.hpp"

namespace dcube {

/// Jumps L_k = A_k (x) B_k with A_k on subsystem A, B_k on subsystem B and
/// A_k^2 = I. One ancilla qubit per (Trotter step, jump), flattened
/// step * N_L + k.
struct DcubeConfig {
  SpaceLayout layout_a;
  SpaceLayout layout_b;
  ComplexMatrix h_a;
  ComplexMatrix h_b;
  std::vector<ComplexMatrix> a_ops;
  std::vector<ComplexMatrix> b_ops;
  double t = 0.0;
  int steps = 1;

  /// Checks shapes, hermiticity and A_k^2 = I (1e-12). [A_i, B_j] = 0 holds
  /// by construction because A and B act on different factors.
  void validate() const;
  int jumps() const { return static_cast<int>(a_ops.size()); }
  int ancillas() const { return steps * jumps(); }
};

/// Outcomes gamma_{step,k}; flat position step * jumps + k.
struct GammaBitstring {
  int steps = 0;
  int jumps = 0;
  std::vector<std::uint8_t> bits;

  GammaBitstring() = default;
  GammaBitstring(int steps_, int jumps_) : steps(steps_), jumps(jumps_), bits(std::size_t(steps_) * jumps_, 0) {}

  std::uint8_t at(int step, int k) const { return bits.at(std::size_t(step) * jumps + k); }
  /// Little-endian integer: flat bit i has weight 2^i.
  std::uint64_t index() const;
  static GammaBitstring from_index(std::uint64_t index, int steps, int jumps);
  /// Flat bit 0 first.
  std::string to_string() const;
};

/// V = prod_steps ( e^{-i tau H_B} prod_k e^{i sqrt(tau) B_k Z_{step,k}} ) on
/// S_B (x) ancillas; step 1 and k = 1 act first.
ComplexMatrix build_V(const DcubeConfig& cfg);

/// p_gamma = Tr(V (rho_B (x) |+><+|) V^dagger Pi_gamma) with Pi_gamma the X
/// basis projector; indexed by GammaBitstring::index().
std::vector<double> gamma_probabilities(const DcubeConfig& cfg, const ComplexMatrix& rho_b);

/// Exact sampler: eigencomponent of rho_B first, then ancilla bits one at a
/// time from their conditional marginals.
class GammaSampler {
 public:
  GammaSampler(const DcubeConfig& cfg, const ComplexMatrix& rho_b);
  GammaBitstring sample(Rng& rng) const;

 private:
  int steps_;
  int jumps_;
  int n_;
  std::vector<double> weights_;
  // Per eigencomponent: cumulative column weights, size 2^n + 1.
  std::vector<std::vector<double>> cumulative_;
};

GammaBitstring sample_gamma(const DcubeConfig& cfg, const ComplexMatrix& rho_b, Rng& rng);

/// U_gamma = prod_steps ( e^{-i tau H_A} prod_k A_k^{gamma_{step,k}} ).
ComplexMatrix build_U_gamma(const DcubeConfig& cfg, const GammaBitstring& gamma);

/// sum_gamma p_gamma U_gamma rho_A U_gamma^dagger.
ComplexMatrix exact_decoupled_channel(const DcubeConfig& cfg, const ComplexMatrix& rho_a,
                                      const ComplexMatrix& rho_b);

struct DcubeRunOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  bool keep_samples = false;
};

/// Monte Carlo estimate of Tr(rho_A(t) O): draw gamma, evaluate the A side.
ChannelEstimate run_dcube(const DcubeConfig& cfg, const ComplexMatrix& rho_a, const ComplexMatrix& rho_b,
                          const ComplexMatrix& observable, const DcubeRunOptions& options);

}  // namespace dcube
