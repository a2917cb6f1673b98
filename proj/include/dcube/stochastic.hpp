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
#include <vector>

#include "dcube/lindblad.hpp"
#include "dcube/sampling.hpp"

namespace dcube {

/// Signs s_{j,r} in {-1, +1}, flattened as r * N_L + j (step-major).
using SignVector = std::vector<int>;

SignVector sample_signs(Rng& rng, int steps, int jumps);

/// Weighted eigen-decomposition rho = sum_i w_i |v_i><v_i| keeping w_i > tol.
struct PureDecomposition {
  std::vector<double> weights;
  std::vector<ComplexVector> vectors;
};
PureDecomposition decompose_state(const ComplexMatrix& rho, double tol = 1e-14);

/// Cached eigendecompositions of every Hamiltonian term and effective jump,
/// reusable across times.
struct Alg1Generators {
  explicit Alg1Generators(const LindbladSpec& spec);
  std::size_t dim = 0;
  std::vector<HermitianExp> terms;
  std::vector<double> coefficients;
  std::vector<HermitianExp> jumps;  // of op_j; scaled by sqrt(rate_j)
  std::vector<double> jump_scales;
};

/// Precomputed exponentials for the sampled circuit
///   U_s = prod_r ( prod_k exp(-i tau h_k) prod_j exp(i s_{j,r} sqrt(tau) L_j) ),
/// tau = t / R, L_j = sqrt(rate_j) op_j. In every product the first index is
/// applied first, so within a step the jump factors act before the
/// Hamiltonian factors, both in declaration order.
class Alg1Circuit {
 public:
  Alg1Circuit(const LindbladSpec& spec, double t, int steps, double prune_tol = 1e-14);
  Alg1Circuit(const Alg1Generators& gens, double t, int steps, double prune_tol = 1e-14);

  int steps() const { return steps_; }
  int jumps() const { return static_cast<int>(jump_plus_.size()); }
  std::size_t dim() const { return dim_; }

  ComplexMatrix unitary(const SignVector& s) const;
  ComplexVector apply(const SignVector& s, const ComplexVector& psi) const;

 private:
  void check_signs(const SignVector& s) const;
  std::size_t dim_;
  int steps_;
  std::vector<SparseMatrix> h_exps_;
  std::vector<SparseMatrix> jump_plus_;
  std::vector<SparseMatrix> jump_minus_;
};

ComplexMatrix build_unitary_alg1(const LindbladSpec& spec, double t, int steps, const SignVector& s);

/// e^{-iHt} 1/2 (e^{i sqrt(t) L} rho e^{-i sqrt(t) L} + h.c. sign) e^{iHt} for a
/// spec with exactly one Hermitian jump (L = sqrt(rate) op).
ComplexMatrix one_step_map(const LindbladSpec& spec, const ComplexMatrix& rho, double t);

struct Alg1Options {
  int steps = 1;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  bool keep_samples = false;
};

/// Estimate of Tr(U_s rho0 U_s^dagger O) averaged over uniformly drawn s.
ChannelEstimate run_alg1(const LindbladSpec& spec, const ComplexMatrix& rho0, const ComplexMatrix& observable,
                         double t, const Alg1Options& options);

/// Several observables on a time grid. Result[time][observable]. Sample p at
/// time index i uses stream(seed, i, p).
std::vector<std::vector<ChannelEstimate>> run_alg1_series(const LindbladSpec& spec, const ComplexMatrix& rho0,
                                                          const std::vector<ComplexMatrix>& observables,
                                                          const std::vector<double>& times,
                                                          const Alg1Options& options);

/// Exact average over all 2^(N_L R) sign vectors as a superoperator.
ComplexMatrix averaged_channel_exact(const LindbladSpec& spec, double t, int steps);

/// Hermitian dilation of a general jump: L = ell (x) sigma+ + ell^dagger (x) sigma-
/// on the system plus one ancilla qubit prepared in |0><0|; sigma+ = |1><0|.
struct AncillaExtension {
  LindbladSpec spec;
  SpaceLayout system_layout;
  ComplexMatrix attach(const ComplexMatrix& rho_system) const;
  ComplexMatrix reduce(const ComplexMatrix& rho_extended) const;
};

AncillaExtension ancilla_extend(const ComplexMatrix& ell, const SpaceLayout& system_layout);

/// Uniform disorder xi in [a, b] on H0 + xi H1 averaged over a time t:
/// -i[H0 + (a+b)/2 H1, rho] + t (b-a)^2 / 12 D[H1](rho).
LindbladSpec disorder_to_dephasing(const SpaceLayout& layout, const ComplexMatrix& h0, const ComplexMatrix& h1,
                                   double a, double b, double t);

}  // namespace dcube
