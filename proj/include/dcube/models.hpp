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

#include "dcube/lindblad.hpp"

namespace dcube {

/// Hubbard chain with one truncated oscillator per site. Fermion modes are
/// indexed mode = site (spinless) or mode = 2 * site + spin (spinful, spin 0
/// is up). Hopping is -J between nearest neighbours of an open chain.
struct ModelConfig {
  int sites = 2;
  double J = 1.0;
  double U = 0.0;
  /// One entry per site, or a single entry broadcast to all sites.
  std::vector<double> omega{1.0};
  std::vector<double> g{0.0};
  int n_b = 8;
  bool spinful = false;
  /// Modes occupied in the initial Fock state.
  std::vector<int> occupied_modes{0};

  void validate() const;
  int modes() const { return spinful ? 2 * sites : sites; }
  int mode_index(int site, int spin = 0) const;
  double omega_at(int site) const;
  double g_at(int site) const;
};

SpaceLayout fermion_layout(const ModelConfig& cfg);
/// Fermion modes first, then one boson mode of n_b levels per site.
SpaceLayout eph_layout(const ModelConfig& cfg);

/// Single-particle hopping matrix h with H_F(U=0) = sum h_mn c_m^dagger c_n.
ComplexMatrix hopping_matrix(const ModelConfig& cfg);

/// Number operator of the `mode`-th fermion mode of a layout.
ComplexMatrix mode_number(const SpaceLayout& layout, std::size_t mode);
/// Total site density (both spins when spinful).
ComplexMatrix site_density(const ModelConfig& cfg, const SpaceLayout& layout, int site);
/// Involutory site sign A_j: 2 n_j - 1 when spinless, -(-1)^(n_up + n_down)
/// when spinful. Both square to the identity.
ComplexMatrix site_sign(const ModelConfig& cfg, const SpaceLayout& layout, int site);

ComplexMatrix fermion_hamiltonian(const ModelConfig& cfg, const SpaceLayout& layout);
/// sum_j omega_j q_j^dagger q_j over the boson factors of the layout.
ComplexMatrix boson_hamiltonian(const ModelConfig& cfg, const SpaceLayout& layout);
/// (q_j + q_j^dagger) / sqrt(2) on the boson factor of site j.
ComplexMatrix boson_position_at(const SpaceLayout& layout, int site);

/// -i[H_F + H_Q, rho] + 1/4 sum_j g_j^2 D[x_j A_j](rho) on eph_layout.
LindbladSpec build_eph_lindblad(const ModelConfig& cfg);
/// -i[H_F, rho] + sum_j g_j^2 D[n_j](rho) on fermion_layout.
LindbladSpec build_fermion_dephasing(const ModelConfig& cfg);

/// Fock state with cfg.occupied_modes filled and all bosons in vacuum.
ComplexVector fock_vector(const ModelConfig& cfg, const SpaceLayout& layout);
DensityMatrix fock_state(const ModelConfig& cfg, const SpaceLayout& layout);

struct GroundState {
  double energy = 0.0;
  ComplexVector vector;  // on fermion_layout(cfg)
  double gap = 0.0;      // to the next level in the sector
};

/// Lowest eigenvector of H_F inside a fixed particle-number sector. Spinless
/// models use n_up as the particle count. A negative count means half filling.
/// Degenerate levels resolve to the lowest-index eigenvector; the overall
/// phase is fixed so the largest component is real and positive.
GroundState ground_state(const ModelConfig& cfg, int n_up = -1, int n_down = -1);

/// |psi><psi| on fermions tensored with boson vacuum if the layout has bosons.
DensityMatrix with_boson_vacuum(const ModelConfig& cfg, const SpaceLayout& layout,
                                const ComplexVector& fermion_psi);

}  // namespace dcube
