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

#include "dcube/flo.hpp"

namespace dcube {

ComplexMatrix correlation_matrix(const ComplexMatrix& rho, const SpaceLayout& layout) {
  const auto modes = layout.indices_of(FactorKind::kFermionMode);
  const auto n = static_cast<Eigen::Index>(modes.size());
  std::vector<FermionPair> c;
  for (std::size_t m = 0; m < modes.size(); ++m) c.push_back(jordan_wigner(m, layout));
  ComplexMatrix out(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k) out(m, k) = (rho * c[m].create * c[k].annihilate).trace();
  return out;
}

ComplexMatrix fock_correlation(int modes, const std::vector<int>& occupied) {
  ComplexMatrix c = ComplexMatrix::Zero(modes, modes);
  for (int m : occupied) {
    if (m < 0 || m >= modes) throw ValidationError("occupied mode out of range");
    c(m, m) = 1.0;
  }
  return c;
}

ComplexMatrix evolve_correlation(const ComplexMatrix& c, const ComplexMatrix& h, double tau) {
  if (h.rows() != c.rows() || h.cols() != c.cols() || c.rows() != c.cols())
    throw ValidationError("evolve_correlation: shape mismatch");
  if (!is_hermitian(h)) throw ValidationError("single-particle Hamiltonian must be Hermitian");
  const ComplexMatrix m = HermitianExp(h)(-tau);
  return m.conjugate() * c * m.transpose();
}

ComplexMatrix z_string_matrix(int modes, const std::vector<int>& flipped) {
  ComplexMatrix d = ComplexMatrix::Identity(modes, modes);
  for (int m : flipped) {
    if (m < 0 || m >= modes) throw ValidationError("flipped mode out of range");
    d(m, m) = -1.0;
  }
  return d;
}

ComplexMatrix apply_z_string(const ComplexMatrix& c, const std::vector<int>& flipped) {
  ComplexMatrix out = c;
  for (int m : flipped) {
    if (m < 0 || m >= c.rows()) throw ValidationError("flipped mode out of range");
    out.row(m) *= -1.0;
    out.col(m) *= -1.0;
  }
  return out;
}

ComplexMatrix apply_z_string_transfer(const ComplexMatrix& m, const std::vector<int>& flipped) {
  ComplexMatrix out = m;
  for (int k : flipped) {
    if (k < 0 || k >= m.rows()) throw ValidationError("flipped mode out of range");
    out.row(k) *= -1.0;
  }
  return out;
}

ComplexMatrix trajectory_transfer(const ComplexMatrix& step_exp, const GammaBitstring& gamma,
                                  const std::vector<std::vector<int>>& site_modes) {
  if (static_cast<std::size_t>(gamma.jumps) != site_modes.size())
    throw ValidationError("trajectory_transfer: gamma has the wrong number of jumps");
  ComplexMatrix m = ComplexMatrix::Identity(step_exp.rows(), step_exp.cols());
  for (int r = 0; r < gamma.steps; ++r) {
    for (int k = 0; k < gamma.jumps; ++k)
      if (gamma.at(r, k)) m = apply_z_string_transfer(m, site_modes[k]);
    m = step_exp * m;
  }
  return m;
}

ComplexMatrix trajectory_transfer(const ComplexMatrix& h, const GammaBitstring& gamma, double t,
                                  const std::vector<std::vector<int>>& site_modes) {
  if (!is_hermitian(h)) throw ValidationError("single-particle Hamiltonian must be Hermitian");
  if (gamma.steps < 1) throw ValidationError("trajectory needs at least one step");
  return trajectory_transfer(HermitianExp(h)(-t / gamma.steps), gamma, site_modes);
}

RealVector trajectory_densities(const ComplexMatrix& m, const ComplexMatrix& c0) {
  const ComplexMatrix c = m.conjugate() * c0 * m.transpose();
  return c.diagonal().real();
}

Complex gf_anticommutator(const ComplexMatrix& m, int mode) {
  if (mode < 0 || mode >= m.rows()) throw ValidationError("mode out of range");
  return std::conj(m(mode, mode));
}

}  // namespace dcube
