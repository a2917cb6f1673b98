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
#include "dcube/tensor.hpp"

namespace dcube {

// Single-particle conventions. A many-body unitary U acts on modes through
// U^dagger c_m U = sum_n M_mn c_n. For U = exp(-i tau H) with
// H = sum h_mn c_m^dagger c_n this gives M = exp(-i h tau). Correlations
// C_mn = Tr(rho c_m^dagger c_n) then map to conj(M) C M^T.

/// C_mn = Tr(rho c_m^dagger c_n) of a dense state on `modes` fermion modes.
ComplexMatrix correlation_matrix(const ComplexMatrix& rho, const SpaceLayout& layout);
/// Correlation matrix of a Fock state with the listed modes occupied.
ComplexMatrix fock_correlation(int modes, const std::vector<int>& occupied);

/// Correlations after exp(-i h tau): conj(M) C M^T with M = exp(-i h tau).
ComplexMatrix evolve_correlation(const ComplexMatrix& c, const ComplexMatrix& h, double tau);

/// Diagonal sign matrix with -1 on the given modes.
ComplexMatrix z_string_matrix(int modes, const std::vector<int>& flipped);
/// Conjugation by a site sign operator: D C D.
ComplexMatrix apply_z_string(const ComplexMatrix& c, const std::vector<int>& flipped);
/// Left-multiplies a transfer matrix by the sign matrix: D M.
ComplexMatrix apply_z_string_transfer(const ComplexMatrix& m, const std::vector<int>& flipped);

/// Transfer matrix of U_gamma = prod_steps ( e^{-i tau H} prod_k A_k^{gamma_{step,k}} )
/// where A_k flips the sign of site_modes[k]. M = M_last ... M_first.
ComplexMatrix trajectory_transfer(const ComplexMatrix& h, const GammaBitstring& gamma, double t,
                                  const std::vector<std::vector<int>>& site_modes);

/// Same trajectory with the step exponential precomputed.
ComplexMatrix trajectory_transfer(const ComplexMatrix& step_exp, const GammaBitstring& gamma,
                                  const std::vector<std::vector<int>>& site_modes);

/// Densities <n_i> = (conj(M) C0 M^T)_ii after the trajectory.
RealVector trajectory_densities(const ComplexMatrix& m, const ComplexMatrix& c0);

/// <{c_i^dagger(t), c_i}> = conj(M_ii), independent of the state.
Complex gf_anticommutator(const ComplexMatrix& m, int mode);

}  // namespace dcube
