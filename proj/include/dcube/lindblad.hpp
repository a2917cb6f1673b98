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

#include <string>
#include <vector>

#include "dcube/tensor.hpp"

namespace dcube {

struct HamiltonianTerm {
  double coefficient = 1.0;
  ComplexMatrix op;
  std::string label;
};

struct JumpTerm {
  double rate = 0.0;
  ComplexMatrix op;
  bool hermitian = true;
  std::string label;
};

/// H = sum_k coefficient_k op_k and jump terms rate_j D[op_j], with
/// D[L](rho) = L rho L^dagger - 1/2 {L^dagger L, rho}.
class LindbladSpec {
 public:
  LindbladSpec() = default;
  explicit LindbladSpec(SpaceLayout layout) : layout_(std::move(layout)) {}

  LindbladSpec& add_hamiltonian(double coefficient, ComplexMatrix op, std::string label = {});
  /// Hermitian jumps are checked to 1e-12; non-Hermitian jumps must pass
  /// hermitian = false.
  LindbladSpec& add_jump(double rate, ComplexMatrix op, bool hermitian = true,
                         std::string label = {});

  const SpaceLayout& layout() const { return layout_; }
  std::size_t dim() const { return layout_.total_dim(); }
  const std::vector<HamiltonianTerm>& hamiltonian_terms() const { return hterms_; }
  const std::vector<JumpTerm>& jump_terms() const { return jumps_; }
  bool all_jumps_hermitian() const;

  ComplexMatrix hamiltonian() const;
  /// Matrix-free action on a general operator X (not necessarily a state).
  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  void check_shape(const ComplexMatrix& op, const char* what) const;
  SpaceLayout layout_;
  std::vector<HamiltonianTerm> hterms_;
  std::vector<JumpTerm> jumps_;
};

/// Unital spec: Hermitian jumps with unit rate, H = sum of the given terms.
LindbladSpec build_unital(const SpaceLayout& layout, const std::vector<ComplexMatrix>& hamiltonian,
                          const std::vector<ComplexMatrix>& jumps);

/// Sparse precompiled form used by the integrator:
/// dX = -i (H_eff X - X H_eff^dagger) + sum_j rate_j L_j X L_j^dagger,
/// H_eff = H - i/2 sum_j rate_j L_j^dagger L_j.
class CompiledLindbladian {
 public:
  explicit CompiledLindbladian(const LindbladSpec& spec);
  ComplexMatrix apply(const ComplexMatrix& x) const;
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_ = 0;
  SparseMatrix h_eff_;
  SparseMatrix h_eff_adj_;
  std::vector<double> rates_;
  std::vector<SparseMatrix> ls_;
  std::vector<SparseMatrix> ls_adj_;
};

enum class EvolveMethod { kAuto, kRungeKutta, kDense };

struct EvolveOptions {
  double atol = 1e-9;
  double rtol = 0.0;
  double initial_step = 1e-3;
  double min_step = 1e-12;
  std::size_t max_steps = 10'000'000;
  /// kAuto picks the dense propagator for dim <= dense_max_dim, else RK45.
  EvolveMethod method = EvolveMethod::kAuto;
  std::size_t dense_max_dim = 16;
};

/// Adaptive Dormand-Prince integration of dX/dt = L(X) with max-abs error
/// control; works on any operator, not only density matrices.
ComplexMatrix evolve_operator(const LindbladSpec& spec, const ComplexMatrix& x0, double t,
                              const EvolveOptions& options = {});

/// X(t_k) for an increasing grid of times starting at or after 0.
std::vector<ComplexMatrix> evolve_operator_series(const LindbladSpec& spec, const ComplexMatrix& x0,
                                                  const std::vector<double>& times,
                                                  const EvolveOptions& options = {});

DensityMatrix evolve_exact(const LindbladSpec& spec, const DensityMatrix& rho0, double t,
                           const EvolveOptions& options = {});

// ---------------------------------------------------------------------------
// Superoperators (column-stacking: vec(A X B) = (B^T kron A) vec(X))
// ---------------------------------------------------------------------------

ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, std::size_t dim);

/// Dense Lindbladian superoperator; rows = dim^2 must fit the capacity cap.
ComplexMatrix vectorize(const LindbladSpec& spec);
/// Superoperator of rho -> U rho U^dagger.
ComplexMatrix unitary_superoperator(const ComplexMatrix& u);
/// exp(t Lhat).
ComplexMatrix exact_channel(const LindbladSpec& spec, double t);
ComplexMatrix apply_superoperator(const ComplexMatrix& s, const ComplexMatrix& x);

}  // namespace dcube
