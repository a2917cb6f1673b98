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

#include <vector>

#include "dcube/dcube.hpp"
#include "dcube/lindblad.hpp"
#include "dcube/sampling.hpp"

namespace dcube {

using RealMatrix = Eigen::MatrixXd;

/// Ancilla register left behind once the oscillators are traced out: N
/// qubits per site column k, L columns. Flat qubit index f = j * L + k for
/// Trotter step j (0-based) and site k; a sign configuration s has
/// s_f = +1 for bit 0 and -1 for bit 1.
struct IqpSpec {
  int L = 1;
  int N = 1;
  std::vector<double> g{0.0};      // one entry or one per site
  std::vector<double> omega{1.0};  // one entry or one per site
  double t = 0.0;

  void validate() const;
  int bits() const { return N * L; }
  int flat(int j, int k) const { return j * L + k; }
  double g_at(int k) const;
  double omega_at(int k) const;
};

/// Per column k, an N x N matrix with entry (j, l), j > l, holding the ZZ
/// coefficient (g_k^2 / 8N) sin(omega_k (l - j) t / N). Columns never couple.
std::vector<RealMatrix> h_iqp_coefficients(const IqpSpec& spec);

/// a_j = (g_k / 2) sqrt(1 / 2N) exp(i omega_k (j + 1) t / N), j = 0..N-1.
ComplexVector jump_ell_vector(const IqpSpec& spec, int k);

/// Scalar value of ell_k on a sign configuration (flat, length N * L).
Complex ell_value(const IqpSpec& spec, int k, const std::vector<int>& s);
/// Diagonal energy of H_IQP on a sign configuration.
double iqp_energy(const IqpSpec& spec, const std::vector<int>& s);

/// lambda_{s,s'} = -1/2 sum_k |ell_{k,s} - ell_{k,s'}|^2 + i sum_k Im(ell_{k,s} conj(ell_{k,s'})).
Complex lambda_eigenvalue(const IqpSpec& spec, const std::vector<int>& s, const std::vector<int>& s2);

/// Bound on |Re lambda_{s,s xor eta}| derived from the closed form:
/// sum_k g_k^2 |eta_k|^2 / (4N), where |eta_k| counts flips in column k.
double lambda_band_bound(const IqpSpec& spec, const std::vector<int>& s, const std::vector<int>& s2);

/// Sign configuration from a little-endian flat bit index.
std::vector<int> signs_from_index(std::uint64_t index, int bits);

/// Dense probability table over outcomes, indexed little-endian by flat bit.
struct GammaDistribution {
  int L = 0;
  int N = 0;
  std::vector<double> probs;
};

/// Gamma for one site column: 2^N entries, bit j is Trotter step j.
std::vector<double> gamma_column_exact(const IqpSpec& spec, int k);
/// Full table as the product of the column tables.
GammaDistribution gamma_exact(const IqpSpec& spec);

/// Same law computed with explicit truncated oscillators (n_b levels) in
/// vacuum, coupled through the Dcube ancilla construction.
GammaDistribution gamma_via_boson_trace(const IqpSpec& spec, int n_b);

/// -i[H_IQP, rho] + sum_k D[ell_k](rho) on N * L qubits; qubit factor f is flat
/// bit f (factor 0 most significant in the basis index).
LindbladSpec build_iqp_lindblad(const IqpSpec& spec, bool include_hamiltonian = true);

struct CircuitOptions {
  int n_rho = 0;   // internal product-formula steps; 0 -> ceil(N^(1/4))
  int order = 2;   // 1 or 2
  int n_eta = 0;   // G applications per column; 0 -> N
  bool exact_rotation = false;  // replace the product formula by the exact 2x2 exponential
};

int default_n_rho(int N);

/// Statevector sampler: per column, N_eta applications of the G map with
/// eps = sqrt(t / N_eta), each on a freshly reset ancilla that is measured,
/// then the H_IQP phases and an X-basis measurement.
class IqpCircuitSampler {
 public:
  IqpCircuitSampler(const IqpSpec& spec, const CircuitOptions& options = {});
  GammaBitstring sample(Rng& rng) const;
  /// Outcome bits of column k (bit j = Trotter step j), little-endian.
  std::uint64_t sample_column(int k, Rng& rng) const;

 private:
  IqpSpec spec_;
  int n_eta_;
  // Per column: ancilla amplitudes after the rotation, for every basis s.
  std::vector<std::vector<Complex>> w0_, w1_;
  std::vector<std::vector<Complex>> phases_;
};

/// Draws from the exact column tables (inverse CDF per column).
class IqpExactSampler {
 public:
  explicit IqpExactSampler(const IqpSpec& spec);
  GammaBitstring sample(Rng& rng) const;

 private:
  IqpSpec spec_;
  std::vector<std::vector<double>> cumulative_;
};

GammaBitstring gamma_circuit_sample(const IqpSpec& spec, int n_rho, int order, Rng& rng, int n_eta = 0);

/// Column-register superoperator of one G application with step eps, built
/// densely (ancilla in |0>, unitary exponential via matrix_exp, ancilla traced).
/// With exact_rotation = false the unitary is the product formula instead.
ComplexMatrix g_map_superoperator(const IqpSpec& spec, int k, double eps, const CircuitOptions& options);
/// Dense superoperator of D[ell_k] on the N-qubit column register.
ComplexMatrix column_dissipator_superoperator(const IqpSpec& spec, int k);

struct AnticoncentrationReport {
  double max_probability = 0.0;
  double collision_probability = 0.0;
  double entropy_bits = 0.0;
};

AnticoncentrationReport anticoncentration_report(const std::vector<double>& probs);

}  // namespace dcube
